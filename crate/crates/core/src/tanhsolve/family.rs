use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::ansatz::{algebraic_system, once_integrated_ode, uncorrected_ode, TanhAnsatz};
use super::ypoly::{horner, tanh_guarded, TanhAlphabet, TanhPoly, TanhSymbol};
use crate::diffalg::{Param, PdeInstance};
use crate::error::{Error, Result};
use crate::poly::{fmt_rational, rat, rational_to_f64, Alphabet, RatFunc};
use crate::symmetry::ReducedOde;

type TanhRat = RatFunc<TanhAlphabet>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyId {
    Set1,
    Set2,
    Set3,
}

impl FamilyId {
    pub const ALL: [FamilyId; 3] = [FamilyId::Set1, FamilyId::Set2, FamilyId::Set3];

    pub fn family(self) -> SolutionFamily {
        match self {
            FamilyId::Set1 => SolutionFamily::set1(),
            FamilyId::Set2 => SolutionFamily::set2(),
            FamilyId::Set3 => SolutionFamily::set3(),
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyId::Set1 => "set1",
            FamilyId::Set2 => "set2",
            FamilyId::Set3 => "set3",
        })
    }
}

/// Solitary waves `U = a0 + a1 Y + a2 Y^2`, `Y = tanh(x - c t)`, described
/// by the symbols they fix in terms of the free ones.
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionFamily {
    pub id: FamilyId,
    pub free: Vec<TanhSymbol>,
    pub constraints: Vec<(TanhSymbol, TanhRat)>,
}

fn s(p: Param) -> TanhPoly {
    TanhSymbol::Param(p).poly()
}

fn coef(i: u8) -> TanhPoly {
    TanhSymbol::Coef(i).poly()
}

fn k(n: i64, d: i64) -> TanhPoly {
    TanhPoly::constant(rat(n, d))
}

fn poly(p: TanhPoly) -> TanhRat {
    RatFunc::from_poly(p)
}

fn frac(n: TanhPoly, d: TanhPoly) -> TanhRat {
    RatFunc::new(n, d).expect("nonzero denominator")
}

impl SolutionFamily {
    pub fn set1() -> Self {
        use Param::*;
        let a2sq = coef(2).pow(2);
        SolutionFamily {
            id: FamilyId::Set1,
            free: vec![TanhSymbol::Coef(2), TanhSymbol::Param(A), TanhSymbol::Param(Alpha)],
            constraints: vec![
                (TanhSymbol::Coef(0), TanhRat::zero()),
                (TanhSymbol::Coef(1), TanhRat::zero()),
                (TanhSymbol::Param(C), poly(s(A) + &(&s(Alpha) * &a2sq) * &k(1, 5))),
                (TanhSymbol::Param(Beta), poly(&(&s(Alpha) * &a2sq) * &k(1, 360))),
                (TanhSymbol::Param(Lambda), poly(&(&s(Alpha) * &coef(2)) * &k(16, 15))),
                (TanhSymbol::Param(Mu), poly(&(&s(Alpha) * &a2sq) * &k(1, 45))),
            ],
        }
    }

    pub fn set2() -> Self {
        use Param::*;
        let amc = s(A) - s(C);
        SolutionFamily {
            id: FamilyId::Set2,
            free: vec![TanhSymbol::Coef(0), TanhSymbol::Param(A), TanhSymbol::Param(C)],
            constraints: vec![
                (TanhSymbol::Coef(1), TanhRat::zero()),
                (TanhSymbol::Coef(2), poly(&coef(0) * &k(-2, 1))),
                (TanhSymbol::Param(Alpha), frac(&amc * &k(15, 1), &coef(0).pow(2) * &k(7, 1))),
                (TanhSymbol::Param(Beta), poly(&amc * &k(1, 42))),
                (TanhSymbol::Param(Lambda), frac(&amc * &k(4, 1), &coef(0) * &k(7, 1))),
                (TanhSymbol::Param(Mu), poly(&amc * &k(1, 3))),
            ],
        }
    }

    pub fn set3() -> Self {
        use Param::*;
        let a0 = coef(0);
        let a0sq = a0.pow(2);
        let c = &(&s(A) + &(&(&s(Lambda) * &a0) * &k(1, 3))) - &(&(&s(Alpha) * &a0sq) * &k(8, 45));
        let mu = &(&(&s(Lambda) * &a0) * &k(1, 12)) - &(&(&s(Alpha) * &a0sq) * &k(1, 18));
        SolutionFamily {
            id: FamilyId::Set3,
            free: vec![
                TanhSymbol::Coef(0),
                TanhSymbol::Param(A),
                TanhSymbol::Param(Lambda),
                TanhSymbol::Param(Alpha),
            ],
            constraints: vec![
                (TanhSymbol::Coef(1), TanhRat::zero()),
                (TanhSymbol::Coef(2), poly(-&a0)),
                (TanhSymbol::Param(C), poly(c)),
                (TanhSymbol::Param(Beta), poly(&(&s(Alpha) * &a0sq) * &k(1, 360))),
                (TanhSymbol::Param(Mu), poly(mu)),
            ],
        }
    }

    /// Replaces (or adds) the constraint for one symbol.
    pub fn with_constraint(mut self, sym: TanhSymbol, value: TanhRat) -> Self {
        self.constraints.retain(|(t, _)| *t != sym);
        self.constraints.push((sym, value));
        self
    }

    pub fn constraint(&self, sym: TanhSymbol) -> Option<&TanhRat> {
        self.constraints.iter().find(|(t, _)| *t == sym).map(|(_, v)| v)
    }

    fn substitution(&self) -> Vec<Option<TanhRat>> {
        let mut vals = vec![None; TanhAlphabet::len()];
        for (sym, v) in &self.constraints {
            vals[sym.index()] = Some(v.clone());
        }
        vals
    }

    /// The algebraic system with the constraints substituted, one entry per power of Y.
    pub fn residuals(&self, ode: &ReducedOde) -> Vec<TanhRat> {
        let vals = self.substitution();
        let ansatz = TanhAnsatz::symbolic(2).expect("degree 2");
        algebraic_system(ode, &ansatz)
            .iter()
            .map(|eq| eq.substitute(&vals))
            .collect()
    }

    /// Resolves every symbol from the free ones. Supplied values for
    /// constrained symbols must agree with the constraint.
    pub fn bind(&self, given: &BTreeMap<TanhSymbol, BigRational>) -> Result<BoundSolution> {
        let mut point = vec![rat(0, 1); TanhAlphabet::len()];
        for sym in &self.free {
            let v = given
                .get(sym)
                .ok_or_else(|| Error::MissingParameter(sym.name().to_string()))?;
            point[sym.index()] = v.clone();
        }
        for (sym, expr) in &self.constraints {
            let v = expr
                .eval(&point)
                .ok_or(Error::DivisionByZero("family constraint"))?;
            if let Some(g) = given.get(sym) {
                if *g != v {
                    return Err(Error::ConstraintViolation {
                        name: sym.name().to_string(),
                        given: fmt_rational(g),
                        expected: fmt_rational(&v),
                    });
                }
            }
            point[sym.index()] = v;
        }
        for sym in given.keys() {
            if !self.free.contains(sym) && self.constraint(*sym).is_none() {
                return Err(Error::InvalidArgument(format!(
                    "{sym} is not a parameter of {}",
                    self.id
                )));
            }
        }
        BoundSolution::new(self.id, point)
    }
}

/// Every family is checked against `ode` exactly.
pub fn verify_family(f: &SolutionFamily, ode: &ReducedOde) -> bool {
    f.residuals(ode).iter().all(RatFunc::is_zero)
}

/// Highest x-derivative available from [`BoundSolution::derivatives`].
pub const MAX_DERIVATIVE: usize = 5;

/// A family with every symbol bound to a rational.
#[derive(Clone, Debug)]
pub struct BoundSolution {
    pub id: FamilyId,
    point: Vec<BigRational>,
    /// `U^(k)` as float Y-polynomials, `k = 0..=MAX_DERIVATIVE`.
    derivative_polys: Vec<Vec<f64>>,
}

impl BoundSolution {
    fn new(id: FamilyId, point: Vec<BigRational>) -> Result<Self> {
        let ansatz = TanhAnsatz::symbolic(2)?;
        let derivative_polys = ansatz
            .derivatives(MAX_DERIVATIVE)
            .iter()
            .map(|d| d.numeric(&point))
            .collect();
        Ok(BoundSolution {
            id,
            point,
            derivative_polys,
        })
    }

    pub fn value(&self, sym: TanhSymbol) -> &BigRational {
        &self.point[sym.index()]
    }

    pub fn value_f64(&self, sym: TanhSymbol) -> f64 {
        rational_to_f64(self.value(sym))
    }

    pub fn param(&self, p: Param) -> &BigRational {
        self.value(TanhSymbol::Param(p))
    }

    pub fn speed(&self) -> &BigRational {
        self.param(Param::C)
    }

    /// The equation these values describe.
    pub fn pde(&self) -> PdeInstance {
        let mut pde = PdeInstance::generic();
        for p in [Param::A, Param::Lambda, Param::Alpha, Param::Mu, Param::Beta] {
            pde = pde.with(p, self.param(p).clone());
        }
        pde
    }

    /// Exact `z = x - c t`.
    pub fn z_exact(&self, x: &BigRational, t: &BigRational) -> BigRational {
        x - self.speed() * t
    }

    pub fn z(&self, x: f64, t: f64) -> f64 {
        x - rational_to_f64(self.speed()) * t
    }

    pub fn u_at_z(&self, z: f64) -> f64 {
        horner(&self.derivative_polys[0], tanh_guarded(z))
    }

    pub fn u(&self, x: f64, t: f64) -> f64 {
        self.u_at_z(self.z(x, t))
    }

    /// `u` at a rational point, with z formed exactly before rounding.
    pub fn u_exact_z(&self, x: &BigRational, t: &BigRational) -> f64 {
        self.u_at_z(rational_to_f64(&self.z_exact(x, t)))
    }

    /// `d^k u / dx^k` for `k = 0..=order`, and `u_t = -c u_x`.
    pub fn derivatives(&self, x: f64, t: f64, order: usize) -> Result<WaveDerivatives> {
        if order > MAX_DERIVATIVE {
            return Err(Error::InvalidArgument(format!(
                "derivative order {order} exceeds {MAX_DERIVATIVE}"
            )));
        }
        let y = tanh_guarded(self.z(x, t));
        let xs: Vec<f64> = (0..=order.max(1))
            .map(|k| horner(&self.derivative_polys[k], y))
            .collect();
        let ut = -rational_to_f64(self.speed()) * xs[1];
        let mut xs = xs;
        xs.truncate(order + 1);
        Ok(WaveDerivatives { x: xs, t: ut })
    }

    /// Left-hand side of the PDE from the analytic derivatives.
    pub fn pde_residual(&self, x: f64, t: f64) -> f64 {
        let d = self.derivatives(x, t, MAX_DERIVATIVE).expect("within bound");
        let p = |q| rational_to_f64(self.param(q));
        let (u, ux) = (d.x[0], d.x[1]);
        d.t + p(Param::A) * ux + p(Param::Lambda) * u * ux - p(Param::Alpha) * u * u * ux
            + p(Param::Mu) * d.x[3]
            + p(Param::Beta) * d.x[5]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WaveDerivatives {
    pub x: Vec<f64>,
    pub t: f64,
}

pub fn eval_solution(
    f: &SolutionFamily,
    given: &BTreeMap<TanhSymbol, BigRational>,
    x: f64,
    t: f64,
) -> Result<f64> {
    Ok(f.bind(given)?.u(x, t))
}

pub fn closed_form_derivatives(
    f: &SolutionFamily,
    given: &BTreeMap<TanhSymbol, BigRational>,
    x: f64,
    t: f64,
    order: usize,
) -> Result<WaveDerivatives> {
    f.bind(given)?.derivatives(x, t, order)
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport {
    pub id: FamilyId,
    pub free: Vec<String>,
    pub constraints: BTreeMap<String, String>,
    pub verified: bool,
    pub nonzero_residuals: usize,
    pub verified_against_uncorrected: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TanhReport {
    pub balance: u32,
    pub ode: String,
    pub equations: Vec<String>,
    pub families: Vec<FamilyReport>,
}

impl TanhReport {
    pub fn compute() -> Result<Self> {
        let pde = PdeInstance::generic();
        let ode = once_integrated_ode(&pde)?;
        let bad = uncorrected_ode(&pde)?;
        let m = super::ansatz::balance(&ode)?;
        let equations = algebraic_system(&ode, &TanhAnsatz::symbolic(m)?)
            .iter()
            .enumerate()
            .map(|(k, e)| format!("Y^{k}: {e} = 0"))
            .collect();
        let families = FamilyId::ALL
            .iter()
            .map(|id| {
                let f = id.family();
                let res = f.residuals(&ode);
                FamilyReport {
                    id: *id,
                    free: f.free.iter().map(|s| s.name().to_string()).collect(),
                    constraints: f
                        .constraints
                        .iter()
                        .map(|(s, v)| (s.name().to_string(), v.to_string()))
                        .collect(),
                    verified: res.iter().all(RatFunc::is_zero),
                    nonzero_residuals: res.iter().filter(|r| !r.is_zero()).count(),
                    verified_against_uncorrected: verify_family(&f, &bad),
                }
            })
            .collect();
        Ok(TanhReport {
            balance: m,
            ode: ode.to_string(),
            equations,
            families,
        })
    }

    pub fn all_verified(&self) -> bool {
        self.families.iter().all(|f| f.verified)
    }
}

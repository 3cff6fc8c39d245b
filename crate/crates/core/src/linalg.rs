//! Exact linear algebra over the field of rational functions in the
//! parameters, used to solve determining systems.
//!
//! Parameters are treated as algebraically independent: an entry counts as
//! nonzero whenever its numerator is a nonzero polynomial. Specialised
//! parameter values must be bound before elimination.

use std::collections::{BTreeMap, HashSet};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::poly::{Alphabet, Poly, RatFunc};

/// One homogeneous linear equation: sum of `coefficient * unknown[column]`.
pub type SparseRow<S> = Vec<(usize, Poly<S>)>;

/// Reduced row echelon form over the rational-function field.
pub struct Echelon<S: Alphabet> {
    ncols: usize,
    rows: Vec<BTreeMap<usize, RatFunc<S>>>,
    pivots: Vec<usize>,
}

impl<S: Alphabet> Echelon<S> {
    pub fn new(equations: &[SparseRow<S>], ncols: usize) -> Self {
        let mut seen = HashSet::new();
        let mut work: Vec<BTreeMap<usize, RatFunc<S>>> = Vec::new();
        for eq in equations {
            let row: BTreeMap<usize, RatFunc<S>> = eq
                .iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| {
                    assert!(*j < ncols, "column index out of range");
                    (*j, RatFunc::from_poly(c.clone()))
                })
                .collect();
            if row.is_empty() {
                continue;
            }
            let key: Vec<(usize, String)> =
                row.iter().map(|(j, c)| (*j, c.to_string())).collect();
            if seen.insert(key) {
                work.push(row);
            }
        }

        let mut done: Vec<BTreeMap<usize, RatFunc<S>>> = Vec::new();
        let mut pivots = Vec::new();
        for col in 0..ncols {
            let best = work
                .iter()
                .enumerate()
                .filter_map(|(i, r)| r.get(&col).map(|c| (i, c.complexity(), r.len())))
                .min_by_key(|&(i, cx, len)| (cx, len, i));
            let Some((i, _, _)) = best else { continue };
            let mut prow = work.swap_remove(i);
            let inv = prow[&col].inv().expect("pivot is nonzero");
            for v in prow.values_mut() {
                *v = &*v * &inv;
            }
            for r in work.iter_mut().chain(done.iter_mut()) {
                if let Some(f) = r.get(&col).cloned() {
                    for (j, pv) in &prow {
                        let delta = &f * pv;
                        let entry = r.entry(*j).or_insert_with(RatFunc::zero);
                        *entry = &*entry - &delta;
                        if entry.is_zero() {
                            r.remove(j);
                        }
                    }
                }
            }
            work.retain(|r| !r.is_empty());
            done.push(prow);
            pivots.push(col);
        }
        Echelon {
            ncols,
            rows: done,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let piv: HashSet<usize> = self.pivots.iter().copied().collect();
        (0..self.ncols).filter(|c| !piv.contains(c)).collect()
    }

    /// One basis vector per free column, denominators cleared and content removed;
    /// the free column's entry has a positive leading coefficient.
    pub fn nullspace(&self) -> Vec<Vec<Poly<S>>> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = vec![RatFunc::zero(); self.ncols];
                v[f] = RatFunc::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    if let Some(x) = row.get(&f) {
                        v[p] = -x;
                    }
                }
                let mut w = clear_denominators(&v);
                if w[f].leading().is_some_and(|(_, c)| c < &BigRational::zero()) {
                    w = w.iter().map(|x| -x).collect();
                }
                w
            })
            .collect()
    }
}

/// Scales a rational-function vector to a primitive polynomial vector.
pub fn clear_denominators<S: Alphabet>(v: &[RatFunc<S>]) -> Vec<Poly<S>> {
    let mut dens: Vec<Poly<S>> = Vec::new();
    for x in v {
        if !x.is_zero() && x.denom().as_constant().is_none() && !dens.contains(x.denom()) {
            dens.push(x.denom().clone());
        }
    }
    let scale = dens.iter().fold(Poly::one(), |acc, d| &acc * d);
    let scaled: Vec<Poly<S>> = v
        .iter()
        .map(|x| {
            let y = x * &RatFunc::from_poly(scale.clone());
            y.as_poly().expect("common denominator clears every entry")
        })
        .collect();
    primitive_vector(&scaled)
}

/// Divides a polynomial vector by its common rational and monomial content.
pub fn primitive_vector<S: Alphabet>(v: &[Poly<S>]) -> Vec<Poly<S>> {
    if v.iter().all(|x| x.is_zero()) {
        return v.to_vec();
    }
    let mono = v
        .iter()
        .filter(|x| !x.is_zero())
        .map(|x| x.monomial_content())
        .reduce(|a, b| {
            let mut e = a;
            for i in 0..e.0.len() {
                e.0[i] = e.0[i].min(b.0[i]);
            }
            e
        })
        .unwrap();
    let mut content = v
        .iter()
        .filter(|x| !x.is_zero())
        .map(|x| x.rational_content())
        .reduce(|a, b| rational_gcd(&a, &b))
        .unwrap_or_else(BigRational::one);
    // Make the first nonzero entry's leading coefficient positive.
    let first = v.iter().find(|x| !x.is_zero()).unwrap();
    if first.leading().unwrap().1 < &BigRational::zero() {
        content = -content;
    }
    let mdiv = Poly::monomial(content, mono);
    v.iter()
        .map(|x| x.div_exact(&mdiv).expect("content divides every entry"))
        .collect()
}

fn rational_gcd(a: &BigRational, b: &BigRational) -> BigRational {
    use num_integer::Integer;
    BigRational::new(a.numer().gcd(b.numer()), a.denom().lcm(b.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffalg::{param, Param, ParamAlphabet, ParamPoly};
    use crate::poly::int;

    fn c(n: i64) -> ParamPoly {
        ParamPoly::from_int(n)
    }

    #[test]
    fn empty_system_has_full_nullspace() {
        let e = Echelon::<ParamAlphabet>::new(&[], 1);
        assert_eq!(e.rank(), 0);
        let ns = e.nullspace();
        assert_eq!(ns, vec![vec![ParamPoly::one()]]);
    }

    #[test]
    fn generic_parameter_elimination() {
        // beta*x0 + mu*x1 = 0 ; x2 free
        let rows = vec![vec![(0, param(Param::Beta)), (1, param(Param::Mu))]];
        let e = Echelon::new(&rows, 3);
        assert_eq!(e.rank(), 1);
        let ns = e.nullspace();
        assert_eq!(ns.len(), 2);
        // x1 = 1 -> x0 = -mu/beta, cleared to (-mu, beta, 0)
        assert_eq!(ns[0], vec![-&param(Param::Mu), param(Param::Beta), c(0)]);
        assert_eq!(ns[1], vec![c(0), c(0), c(1)]);
    }

    #[test]
    fn dependent_rows_reduce_rank() {
        let a = param(Param::A);
        let rows = vec![
            vec![(0, a.clone()), (1, c(1))],
            vec![(0, a.scale(&int(2))), (1, c(2))],
            vec![(1, c(3))],
        ];
        let e = Echelon::new(&rows, 2);
        assert_eq!(e.rank(), 2);
        assert!(e.nullspace().is_empty());
    }
}

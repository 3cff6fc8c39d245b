use std::collections::BTreeMap;

use num_rational::BigRational;

use super::family::{BoundSolution, FamilyId};
use super::ypoly::TanhSymbol;
use crate::error::Result;
use crate::poly::{int, rat, rational_to_f64};

/// Rational sampling range `start, start + step, ..., end`.
#[derive(Clone, Debug, PartialEq)]
pub struct Axis {
    pub start: BigRational,
    pub end: BigRational,
    pub step: BigRational,
}

impl Axis {
    pub fn new(start: BigRational, end: BigRational, step: BigRational) -> Self {
        Axis { start, end, step }
    }

    pub fn points(&self) -> Vec<BigRational> {
        let mut out = Vec::new();
        let mut v = self.start.clone();
        while v <= self.end {
            out.push(v.clone());
            v += &self.step;
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum FigureKind {
    /// `u(x, t)` over an (x, t) grid.
    Surface { x: Axis, t: Axis },
    /// `u(x, t0)` along x.
    Slice { x: Axis, t: BigRational },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Figure {
    pub number: u8,
    pub family: FamilyId,
    pub binding: BTreeMap<TanhSymbol, BigRational>,
    pub kind: FigureKind,
}

/// Sampled values; each row is `(x, u)` for slices or `(x, t, u)` for surfaces.
#[derive(Clone, Debug, PartialEq)]
pub struct FigureData {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

fn slice_axis() -> Axis {
    Axis::new(int(-10), int(10), rat(1, 20))
}

fn surface_axes() -> (Axis, Axis) {
    (
        Axis::new(int(-10), int(10), rat(1, 5)),
        Axis::new(int(0), int(4), rat(1, 5)),
    )
}

fn bind(pairs: &[(&str, BigRational)]) -> BTreeMap<TanhSymbol, BigRational> {
    pairs
        .iter()
        .map(|(n, v)| (TanhSymbol::from_name(n).expect("known symbol"), v.clone()))
        .collect()
}

/// The six standard figures: a surface and a `t = 1` slice for each family.
/// Set 2 takes `a = 1`; Set 3 takes every free parameter equal to 1.
pub fn standard_figures() -> Vec<Figure> {
    let sets = [
        (FamilyId::Set1, bind(&[("a2", int(1)), ("a", int(1)), ("alpha", int(2))])),
        (FamilyId::Set2, bind(&[("a0", int(1)), ("a", int(1)), ("c", rat(7, 5))])),
        (
            FamilyId::Set3,
            bind(&[("a0", int(1)), ("a", int(1)), ("lambda", int(1)), ("alpha", int(1))]),
        ),
    ];
    let mut out = Vec::new();
    for (i, (family, binding)) in sets.into_iter().enumerate() {
        let (x, t) = surface_axes();
        out.push(Figure {
            number: 2 * i as u8 + 1,
            family,
            binding: binding.clone(),
            kind: FigureKind::Surface { x, t },
        });
        out.push(Figure {
            number: 2 * i as u8 + 2,
            family,
            binding,
            kind: FigureKind::Slice {
                x: slice_axis(),
                t: int(1),
            },
        });
    }
    out
}

impl Figure {
    pub fn solution(&self) -> Result<BoundSolution> {
        self.family.family().bind(&self.binding)
    }

    pub fn sample(&self) -> Result<FigureData> {
        let sol = self.solution()?;
        Ok(match &self.kind {
            FigureKind::Surface { x, t } => {
                let xs = x.points();
                let mut rows = Vec::new();
                for tv in t.points() {
                    for xv in &xs {
                        rows.push(vec![
                            rational_to_f64(xv),
                            rational_to_f64(&tv),
                            sol.u_exact_z(xv, &tv),
                        ]);
                    }
                }
                FigureData {
                    columns: vec!["x", "t", "u"],
                    rows,
                }
            }
            FigureKind::Slice { x, t } => FigureData {
                columns: vec!["x", "u"],
                rows: x
                    .points()
                    .iter()
                    .map(|xv| vec![rational_to_f64(xv), sol.u_exact_z(xv, t)])
                    .collect(),
            },
        })
    }

    pub fn file_stem(&self) -> String {
        let kind = match self.kind {
            FigureKind::Surface { .. } => "surface",
            FigureKind::Slice { .. } => "slice",
        };
        format!("fig{}_{}_{kind}", self.number, self.family)
    }
}

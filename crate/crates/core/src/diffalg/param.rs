use std::fmt;

use crate::poly::{Alphabet, Poly};

/// The symbolic constants of the equation and the wave speed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Param {
    A,
    Lambda,
    Alpha,
    Mu,
    Beta,
    C,
}

impl Param {
    pub const ALL: [Param; 6] = [
        Param::A,
        Param::Lambda,
        Param::Alpha,
        Param::Mu,
        Param::Beta,
        Param::C,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        ParamAlphabet::NAMES[self.index()]
    }

    pub fn from_name(name: &str) -> Option<Param> {
        ParamAlphabet::index_of(name).map(|i| Param::ALL[i])
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct ParamAlphabet;

impl Alphabet for ParamAlphabet {
    const NAMES: &'static [&'static str] = &["a", "lambda", "alpha", "mu", "beta", "c"];
}

/// Exact polynomial in the parameters a, lambda, alpha, mu, beta, c.
pub type ParamPoly = Poly<ParamAlphabet>;

pub fn param(p: Param) -> ParamPoly {
    ParamPoly::var(p.index())
}

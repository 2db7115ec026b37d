//! Parameter grids for identity checks.
//!
//! Overrides are written as `;`-separated clauses, e.g.
//! `n<=6;l<=10;lambda=0,1/3;k=-1,2;dist=point:1|gamma:1,1;alpha=1;p=2/5`.
//! Distributions are separated by `|` because `gamma:a,b` contains a comma.
//! `l` bounds may be absolute (`l<=10`) or relative to `n` (`l>=n+1`).

use std::collections::BTreeSet;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::probabilistic::Distribution;
use crate::rational::{format_short, parse_rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dim {
    Dist,
    Lambda,
    K,
    N,
    L,
    Alpha,
    P,
}

impl Dim {
    pub fn name(self) -> &'static str {
        match self {
            Dim::Dist => "dist",
            Dim::Lambda => "lambda",
            Dim::K => "k",
            Dim::N => "n",
            Dim::L => "l",
            Dim::Alpha => "alpha",
            Dim::P => "p",
        }
    }
}

/// A bound on `l`, either absolute or `n + offset`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    Abs(usize),
    Rel(i64),
}

impl Bound {
    pub fn at(self, n: usize) -> i64 {
        match self {
            Bound::Abs(v) => v as i64,
            Bound::Rel(offset) => n as i64 + offset,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Bound::Abs(v) => write!(f, "{v}"),
            Bound::Rel(0) => write!(f, "n"),
            Bound::Rel(c) if c > 0 => write!(f, "n+{c}"),
            Bound::Rel(c) => write!(f, "n{c}"),
        }
    }
}

impl FromStr for Bound {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('n') {
            let rest = rest.trim();
            if rest.is_empty() {
                return Ok(Bound::Rel(0));
            }
            let (negative, digits) = match rest.as_bytes()[0] {
                b'+' => (false, &rest[1..]),
                b'-' => (true, &rest[1..]),
                _ => return Err(format!("bad l bound {s:?}")),
            };
            let c: i64 = digits.trim().parse().map_err(|_| format!("bad l bound {s:?}"))?;
            return Ok(Bound::Rel(if negative { -c } else { c }));
        }
        s.parse().map(Bound::Abs).map_err(|_| format!("bad l bound {s:?}"))
    }
}

/// A fully resolved grid. Dimensions an identity does not use are ignored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    pub dists: Vec<Distribution>,
    pub lambdas: Vec<Rational>,
    pub ks: Vec<i64>,
    pub ns: Vec<usize>,
    pub l_lo: Bound,
    pub l_hi: Bound,
    pub alphas: Vec<Rational>,
    pub ps: Vec<Rational>,
}

impl Grid {
    pub fn n_max(&self) -> usize {
        self.ns.iter().copied().max().unwrap_or(0)
    }

    /// Values of `l` paired with `n`; empty when the bounds cross.
    pub fn l_range(&self, n: usize) -> RangeInclusive<usize> {
        let lo = self.l_lo.at(n).max(0) as usize;
        let hi = self.l_hi.at(n);
        if hi < lo as i64 {
            #[allow(clippy::reversed_empty_ranges)]
            return 1..=0;
        }
        lo..=hi as usize
    }

    pub fn l_max(&self) -> usize {
        self.ns.iter().flat_map(|&n| self.l_range(n)).max().unwrap_or(0)
    }

    pub fn merged(&self, o: &GridOverrides) -> Grid {
        let mut g = self.clone();
        if let Some(v) = &o.dists {
            g.dists = v.clone();
        }
        if let Some(v) = &o.lambdas {
            g.lambdas = v.clone();
        }
        if let Some(v) = &o.ks {
            g.ks = v.clone();
        }
        if let Some(v) = &o.ns {
            g.ns = v.clone();
        } else if o.n_min.is_some() || o.n_max.is_some() {
            let lo = o.n_min.unwrap_or_else(|| self.ns.iter().copied().min().unwrap_or(0));
            let hi = o.n_max.unwrap_or_else(|| self.n_max());
            g.ns = (lo..=hi).collect();
        }
        if let Some(b) = o.l_lo {
            g.l_lo = b;
        }
        if let Some(b) = o.l_hi {
            g.l_hi = b;
        }
        if let Some(v) = &o.alphas {
            g.alphas = v.clone();
        }
        if let Some(v) = &o.ps {
            g.ps = v.clone();
        }
        g
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GridOverrides {
    pub dists: Option<Vec<Distribution>>,
    pub lambdas: Option<Vec<Rational>>,
    pub ks: Option<Vec<i64>>,
    pub ns: Option<Vec<usize>>,
    pub n_min: Option<usize>,
    pub n_max: Option<usize>,
    pub l_lo: Option<Bound>,
    pub l_hi: Option<Bound>,
    pub alphas: Option<Vec<Rational>>,
    pub ps: Option<Vec<Rational>>,
}

impl GridOverrides {
    pub fn is_empty(&self) -> bool {
        self.dims().is_empty()
    }

    pub fn dims(&self) -> BTreeSet<Dim> {
        let mut dims = BTreeSet::new();
        let mut mark = |set: bool, d: Dim| {
            if set {
                dims.insert(d);
            }
        };
        mark(self.dists.is_some(), Dim::Dist);
        mark(self.lambdas.is_some(), Dim::Lambda);
        mark(self.ks.is_some(), Dim::K);
        mark(self.ns.is_some() || self.n_min.is_some() || self.n_max.is_some(), Dim::N);
        mark(self.l_lo.is_some() || self.l_hi.is_some(), Dim::L);
        mark(self.alphas.is_some(), Dim::Alpha);
        mark(self.ps.is_some(), Dim::P);
        dims
    }

    /// Copy keeping only the dimensions in `keep`.
    pub fn restricted_to(&self, keep: &[Dim]) -> GridOverrides {
        let has = |d: Dim| keep.contains(&d);
        GridOverrides {
            dists: self.dists.clone().filter(|_| has(Dim::Dist)),
            lambdas: self.lambdas.clone().filter(|_| has(Dim::Lambda)),
            ks: self.ks.clone().filter(|_| has(Dim::K)),
            ns: self.ns.clone().filter(|_| has(Dim::N)),
            n_min: self.n_min.filter(|_| has(Dim::N)),
            n_max: self.n_max.filter(|_| has(Dim::N)),
            l_lo: self.l_lo.filter(|_| has(Dim::L)),
            l_hi: self.l_hi.filter(|_| has(Dim::L)),
            alphas: self.alphas.clone().filter(|_| has(Dim::Alpha)),
            ps: self.ps.clone().filter(|_| has(Dim::P)),
        }
    }
}

impl FromStr for GridOverrides {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        let bad = |reason: String| Error::ParseGrid {
            input: input.to_string(),
            reason,
        };
        let mut out = GridOverrides::default();
        for clause in input.split(';').map(str::trim).filter(|c| !c.is_empty()) {
            let (name, op, value) = ["<=", ">=", "="]
                .iter()
                .find_map(|op| clause.split_once(op).map(|(n, v)| (n.trim(), *op, v.trim())))
                .ok_or_else(|| bad(format!("clause {clause:?} has no <=, >= or =")))?;
            let list = |v: &str| -> Vec<String> { v.split(',').map(|s| s.trim().to_string()).collect() };
            let rationals = |v: &str| -> Result<Vec<Rational>> {
                list(v).iter().map(|s| parse_rational(s)).collect::<Result<_>>().map_err(|e| bad(e.to_string()))
            };
            let uint = |s: &str| -> Result<usize> { s.trim().parse().map_err(|_| bad(format!("bad integer {s:?}"))) };
            match (name, op) {
                ("n", "<=") => out.n_max = Some(uint(value)?),
                ("n", ">=") => out.n_min = Some(uint(value)?),
                ("n", "=") => out.ns = Some(list(value).iter().map(|s| uint(s)).collect::<Result<_>>()?),
                ("l", "<=") => out.l_hi = Some(value.parse().map_err(bad)?),
                ("l", ">=") => out.l_lo = Some(value.parse().map_err(bad)?),
                ("l", "=") => {
                    let b: Bound = value.parse().map_err(bad)?;
                    out.l_lo = Some(b);
                    out.l_hi = Some(b);
                }
                ("lambda", "=") => out.lambdas = Some(rationals(value)?),
                ("alpha", "=") => out.alphas = Some(rationals(value)?),
                ("p", "=") => out.ps = Some(rationals(value)?),
                ("k", "=") => {
                    out.ks = Some(
                        list(value)
                            .iter()
                            .map(|s| s.parse().map_err(|_| bad(format!("bad integer {s:?}"))))
                            .collect::<Result<_>>()?,
                    )
                }
                ("dist", "=") => {
                    out.dists = Some(
                        value
                            .split('|')
                            .map(|s| s.parse::<Distribution>().map_err(|e| bad(e.to_string())))
                            .collect::<Result<_>>()?,
                    )
                }
                _ => return Err(bad(format!("unsupported clause {clause:?}"))),
            }
        }
        Ok(out)
    }
}

pub fn format_list(values: &[Rational]) -> String {
    values.iter().map(format_short).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn parses_clauses() {
        let o: GridOverrides = "n<=6; l<=10".parse().unwrap();
        assert_eq!(o.n_max, Some(6));
        assert_eq!(o.l_hi, Some(Bound::Abs(10)));
        assert_eq!(o.dims(), [Dim::N, Dim::L].into_iter().collect());

        let o: GridOverrides = "lambda=0,1/3;k=-1,2;dist=point:1|gamma:1,1;l=n+2;n=1,3".parse().unwrap();
        assert_eq!(o.lambdas, Some(vec![int(0), ratio(1, 3)]));
        assert_eq!(o.ks, Some(vec![-1, 2]));
        assert_eq!(o.dists.as_ref().unwrap().len(), 2);
        assert_eq!(o.l_lo, Some(Bound::Rel(2)));
        assert_eq!(o.ns, Some(vec![1, 3]));

        assert!("".parse::<GridOverrides>().unwrap().is_empty());
        for bad in ["n<6", "n=x", "lambda<=1", "dist=normal:1", "q=1", "l=m+1", "k=1/2"] {
            assert!(bad.parse::<GridOverrides>().is_err(), "{bad}");
        }
    }

    #[test]
    fn merges_ranges() {
        let base = Grid {
            dists: vec![],
            lambdas: vec![int(0)],
            ks: vec![1],
            ns: (1..=8).collect(),
            l_lo: Bound::Rel(1),
            l_hi: Bound::Rel(4),
            alphas: vec![],
            ps: vec![],
        };
        let g = base.merged(&"n<=3;l<=6".parse().unwrap());
        assert_eq!(g.ns, vec![1, 2, 3]);
        assert_eq!(g.l_range(2), 3..=6);
        assert_eq!(base.l_range(2), 3..=6);
        assert_eq!(base.l_max(), 12);
        let crossed = base.merged(&"l<=2".parse().unwrap());
        assert!(crossed.l_range(5).is_empty());
    }
}

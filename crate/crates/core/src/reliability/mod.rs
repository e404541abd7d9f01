//! Exact two-terminal reliability polynomials.
//!
//! A polynomial is determined by its pathset counts `N_i`, the number of
//! edge subsets of size `i` that connect a source to a terminus:
//!
//! ```text
//! h(p) = sum_i N_i p^i (1 - p)^(n - i) = sum_i b_i p^i
//! ```
//!
//! Two independent engines produce `N`: [`reliability_bruteforce`] scans
//! every subset, [`reliability_frontier`] sweeps the lattice column by column.

mod brute;
mod frontier;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{HammockError, Result};
use crate::lattice::{HammockNetwork, Kind};
use crate::limits::{Engine, Limits};
use crate::poly::{binomial, IntPoly};

pub use brute::{pathset_counts_bruteforce, reliability_bruteforce};
pub use frontier::{pathset_counts_frontier, reliability_frontier};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReliabilityPolynomial {
    length: usize,
    width: usize,
    kind: Kind,
    pathset_counts: Vec<BigInt>,
    expanded: Vec<BigInt>,
}

impl ReliabilityPolynomial {
    /// `counts[i]` must be the number of pathsets of size `i`, for
    /// `i = 0..=n` with `n` the network's edge count.
    pub fn from_pathset_counts(net: &HammockNetwork, counts: Vec<BigInt>) -> Self {
        assert_eq!(counts.len(), net.edge_count() + 1, "one count per subset size");
        let expanded = expand_pathset_form(&counts);
        Self {
            length: net.length(),
            width: net.width(),
            kind: net.kind(),
            pathset_counts: counts,
            expanded,
        }
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    /// Number of edges.
    pub fn n(&self) -> usize {
        self.pathset_counts.len() - 1
    }

    /// `N_0 ..= N_n`.
    pub fn pathset_counts(&self) -> &[BigInt] {
        &self.pathset_counts
    }

    /// Power-basis coefficients `b_0 ..= b_n`.
    pub fn coefficients(&self) -> &[BigInt] {
        &self.expanded
    }

    pub fn expanded(&self) -> IntPoly {
        IntPoly::new(self.expanded.clone())
    }

    /// Exact value of the pathset form at a rational `p` in `[0, 1]`.
    pub fn eval(&self, p: &BigRational) -> Result<BigRational> {
        if p.is_negative() || p > &BigRational::one() {
            return Err(HammockError::Domain(p.to_string()));
        }
        let q = BigRational::one() - p;
        let n = self.n();
        let mut total = BigRational::zero();
        for (i, c) in self.pathset_counts.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            total += BigRational::from_integer(c.clone()) * pow(p, i) * pow(&q, n - i);
        }
        Ok(total)
    }

    /// Floating-point value of the pathset form, for plotting.
    pub fn eval_f64(&self, p: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&p) {
            return Err(HammockError::Domain(p.to_string()));
        }
        let n = self.n() as i32;
        Ok(self
            .pathset_counts
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let c: f64 = num_traits::ToPrimitive::to_f64(c).unwrap_or(f64::INFINITY);
                c * p.powi(i as i32) * (1.0 - p).powi(n - i as i32)
            })
            .sum())
    }

    /// Exact `k`-th derivative of the expanded form.
    pub fn derivative(&self, k: usize) -> IntPoly {
        self.expanded().nth_derivative(k)
    }

    pub fn cutset_counts(&self) -> CutsetCounts {
        cutset_counts(self)
    }

    pub fn to_json(&self) -> PolynomialJson {
        PolynomialJson {
            l: self.length,
            w: self.width,
            kind: self.kind.number(),
            n: self.n(),
            pathset_counts: self.pathset_counts.iter().map(ToString::to_string).collect(),
            coefficients: self.expanded.iter().map(ToString::to_string).collect(),
        }
    }

    /// Rows `i,N_i,C_i,b_i` under a header line.
    pub fn to_csv(&self) -> String {
        let cuts = self.cutset_counts();
        let mut out = String::from("i,N_i,C_i,b_i\n");
        for i in 0..=self.n() {
            out.push_str(&format!(
                "{i},{},{},{}\n",
                self.pathset_counts[i],
                cuts.counts()[i],
                self.expanded[i]
            ));
        }
        out
    }
}

fn pow(base: &BigRational, e: usize) -> BigRational {
    num_traits::pow(base.clone(), e)
}

/// Wire form; big integers are decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub l: usize,
    pub w: usize,
    pub kind: i64,
    pub n: usize,
    #[serde(rename = "N")]
    pub pathset_counts: Vec<String>,
    #[serde(rename = "b")]
    pub coefficients: Vec<String>,
}

/// `C_i`, the number of cutsets with exactly `i` edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutsetCounts {
    counts: Vec<BigInt>,
}

impl CutsetCounts {
    pub fn counts(&self) -> &[BigInt] {
        &self.counts
    }

    pub fn n(&self) -> usize {
        self.counts.len() - 1
    }
}

/// `C_i = binom(n, n-i) - N_{n-i}`: a subset is a cutset exactly when its
/// complement is not a pathset.
pub fn cutset_counts(poly: &ReliabilityPolynomial) -> CutsetCounts {
    let n = poly.n();
    let counts: Vec<BigInt> = (0..=n)
        .map(|i| binomial(n, n - i) - &poly.pathset_counts[n - i])
        .collect();
    let cuts = CutsetCounts { counts };
    assert_eq!(
        expand_cutset_form(&cuts),
        poly.expanded,
        "pathset and cutset forms disagree"
    );
    cuts
}

/// Power-basis coefficients of `sum_i N_i p^i (1-p)^(n-i)`, padded to `n + 1`.
pub fn expand_pathset_form(counts: &[BigInt]) -> Vec<BigInt> {
    let n = counts.len() - 1;
    let mut b = vec![BigInt::zero(); n + 1];
    for (i, c) in counts.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for j in 0..=(n - i) {
            let term = c * binomial(n - i, j);
            if j % 2 == 0 {
                b[i + j] += term;
            } else {
                b[i + j] -= term;
            }
        }
    }
    b
}

/// Power-basis coefficients of `1 - sum_i C_i (1-p)^i p^(n-i)`, padded to `n + 1`.
pub fn expand_cutset_form(cuts: &CutsetCounts) -> Vec<BigInt> {
    let n = cuts.n();
    let mut b = vec![BigInt::zero(); n + 1];
    b[0] += 1;
    for (i, c) in cuts.counts.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for j in 0..=i {
            let term = c * binomial(i, j);
            if j % 2 == 0 {
                b[n - i + j] -= term;
            } else {
                b[n - i + j] += term;
            }
        }
    }
    b
}

/// Computes the polynomial with the requested engine.
pub fn reliability(net: &HammockNetwork, engine: Engine, limits: &Limits) -> Result<ReliabilityPolynomial> {
    match resolve_engine(net, engine, limits) {
        Engine::Brute => reliability_bruteforce(net, limits),
        _ => reliability_frontier(net, limits),
    }
}

/// The concrete engine `Auto` stands for on this network.
pub fn resolve_engine(net: &HammockNetwork, engine: Engine, limits: &Limits) -> Engine {
    match engine {
        Engine::Auto if net.edge_count() <= limits.brute_max_edges => Engine::Brute,
        Engine::Auto => Engine::Frontier,
        other => other,
    }
}

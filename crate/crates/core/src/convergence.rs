//! Membership checks for the arithmetic sequence spaces.
//!
//! A sequence `g` is arithmetically convergent (AC) when some witness `n`
//! makes `g(m) ⊖ g(⟨m, n⟩)` geometric zero for every `m`, and a sequence `f`
//! is arithmetically summable (AS) when its divisor-sum transform is
//! arithmetically convergent. Only a finite prefix is ever available, so a
//! `Consistent` verdict means no counterexample exists among `m ≤ N`.
//!
//! Two acceptance rules are provided. [`Mode::Exact`] requires every residual
//! to be geometric zero up to a tolerance; [`Mode::Epsilon`] only requires the
//! residuals to stay strictly below a geometric `ε > e^0`.

use alloc::vec::Vec;

use crate::divisor::{divisors, gcd};
use crate::error::{Error, Result};
use crate::field::{gsum, GReal, Tolerance};
use crate::transform::{w_transform, GSeq};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Space {
    /// Arithmetically convergent sequences.
    AC,
    /// Arithmetically summable sequences.
    AS,
    /// Sequences that are eventually geometric zero.
    PHI,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Consistent,
    Refuted,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Mode {
    /// Residuals must be geometric zero within the tolerance.
    Exact(Tolerance),
    /// Residuals must be strictly below `ε`.
    Epsilon(GReal),
}

impl Default for Mode {
    fn default() -> Self {
        Mode::Exact(Tolerance::DEFAULT)
    }
}

impl Mode {
    fn validate(self) -> Result<Self> {
        match self {
            Mode::Epsilon(eps) if eps <= GReal::ZERO => {
                Err(Error::Domain("epsilon must exceed geometric zero"))
            }
            m => Ok(m),
        }
    }

    fn admits(self, residual: GReal) -> bool {
        match self {
            Mode::Exact(tol) => residual.exponent() <= tol.tau(),
            Mode::Epsilon(eps) => residual < eps,
        }
    }

    pub fn epsilon(self) -> Option<GReal> {
        match self {
            Mode::Epsilon(eps) => Some(eps),
            Mode::Exact(_) => None,
        }
    }
}

/// Outcome of a membership check on a finite prefix.
#[derive(Clone, Debug, PartialEq)]
pub struct MembershipReport {
    pub space: Space,
    pub verdict: Verdict,
    /// Smallest admissible witness; absent when refuted.
    pub witness: Option<usize>,
    /// Largest residual under the reported witness, or under the best
    /// candidate when refuted.
    pub max_residual: GReal,
    pub prefix_length: usize,
    pub mode: Mode,
}

impl MembershipReport {
    pub fn is_consistent(&self) -> bool {
        self.verdict == Verdict::Consistent
    }
}

/// A divisibility chain and the sequence extracted along it.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainReport {
    pub chain: Vec<usize>,
    pub extracted: GSeq,
    pub is_cauchy: bool,
    pub limit: Option<GReal>,
}

/// First index `K` such that all terms from `K` on lie within `tol` of each
/// other.
pub fn settling_index(f: &GSeq, tol: Tolerance) -> usize {
    let terms = f.terms();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut k = terms.len();
    for (i, x) in terms.iter().enumerate().rev() {
        let t = x.exponent();
        lo = lo.min(t);
        hi = hi.max(t);
        if hi - lo > tol.tau() {
            break;
        }
        k = i + 1;
    }
    k
}

/// Finite-prefix geometric Cauchy test.
///
/// Holds when the terms settle to within `e^tau` of each other on a tail
/// that covers at least the last half of the prefix, i.e. the settling index
/// is at most `⌊N/2⌋ + 1`. A shorter tail is no evidence: the last term alone
/// always satisfies the bound.
pub fn is_g_cauchy(f: &GSeq, tol: Tolerance) -> bool {
    settling_index(f, tol) <= f.len() / 2 + 1
}

/// Limit estimate for a Cauchy prefix: its final term.
pub fn g_limit(f: &GSeq, tol: Tolerance) -> Option<GReal> {
    if is_g_cauchy(f, tol) {
        f.get(f.len())
    } else {
        None
    }
}

/// Largest `|g(m) ⊖ g(⟨m, n⟩)|` over the prefix.
pub fn ac_residual(g: &GSeq, n: usize) -> GReal {
    let terms = g.terms();
    (1..=terms.len())
        .map(|m| terms[m - 1].gdist(terms[gcd(m, n) - 1]))
        .max()
        .unwrap_or(GReal::ZERO)
}

fn search_witness(g: &GSeq, space: Space, mode: Mode, witness_cap: Option<usize>) -> Result<MembershipReport> {
    let mode = mode.validate()?;
    let n = g.len();
    let cap = match witness_cap {
        Some(0) => return Err(Error::Domain("witness cap must be at least 1")),
        Some(c) => c,
        None => n,
    };
    let mut best: Option<GReal> = None;
    for w in 1..=cap {
        let residual = ac_residual(g, w);
        if mode.admits(residual) {
            return Ok(MembershipReport {
                space,
                verdict: Verdict::Consistent,
                witness: Some(w),
                max_residual: residual,
                prefix_length: n,
                mode,
            });
        }
        if best.is_none_or(|b| residual < b) {
            best = Some(residual);
        }
    }
    Ok(MembershipReport {
        space,
        verdict: Verdict::Refuted,
        witness: None,
        max_residual: best.unwrap_or(GReal::ZERO),
        prefix_length: n,
        mode,
    })
}

/// Arithmetic convergence check with exhaustive witness search over
/// `1..=witness_cap` (default `N`); the smallest admissible witness is
/// reported.
///
/// Witnesses above `N` are meaningful: only their divisors up to `N` matter,
/// and a sequence supported on `1..=K` generally needs a multiple of
/// `lcm(1..=K)`.
pub fn check_arith_convergent(g: &GSeq, mode: Mode, witness_cap: Option<usize>) -> Result<MembershipReport> {
    search_witness(g, Space::AC, mode, witness_cap)
}

/// Arithmetic summability check: the convergence check applied to the
/// divisor-sum transform.
pub fn check_arith_summable(f: &GSeq, mode: Mode, witness_cap: Option<usize>) -> Result<MembershipReport> {
    search_witness(&w_transform(f), Space::AS, mode, witness_cap)
}

/// Eventually-zero classification. The witness is the last index whose term
/// is not geometric zero within `tol` (`0` when there is none); on a finite
/// prefix the verdict is always consistent.
pub fn classify_eventually_zero(f: &GSeq, tol: Tolerance) -> MembershipReport {
    let last = f
        .iter()
        .rposition(|&x| !tol.is_zero(x))
        .map_or(0, |i| i + 1);
    let max_residual = f.terms()[last..]
        .iter()
        .map(|x| x.gabs())
        .max()
        .unwrap_or(GReal::ZERO);
    MembershipReport {
        space: Space::PHI,
        verdict: Verdict::Consistent,
        witness: Some(last),
        max_residual,
        prefix_length: f.len(),
        mode: Mode::Exact(tol),
    }
}

fn validate_chain(f: &GSeq, chain: &[usize]) -> Result<()> {
    if chain.is_empty() {
        return Err(Error::Domain("chain must be non-empty"));
    }
    if chain.iter().any(|&k| k == 0 || k > f.len()) {
        return Err(Error::Domain("chain index outside the sequence prefix"));
    }
    if chain.windows(2).any(|w| w[1] % w[0] != 0) {
        return Err(Error::Domain("chain entries must divide their successors"));
    }
    Ok(())
}

fn chain_report(chain: &[usize], terms: Vec<GReal>, tol: Tolerance) -> Result<ChainReport> {
    let extracted = GSeq::new(terms)?;
    let is_cauchy = is_g_cauchy(&extracted, tol);
    let limit = g_limit(&extracted, tol);
    Ok(ChainReport { chain: chain.to_vec(), extracted, is_cauchy, limit })
}

/// Extracts `f(n_k)` along a divisibility chain.
pub fn chain_extract(f: &GSeq, chain: &[usize], tol: Tolerance) -> Result<ChainReport> {
    validate_chain(f, chain)?;
    let terms = chain.iter().map(|&k| f.at(k)).collect();
    chain_report(chain, terms, tol)
}

/// Extracts the divisor sums `⊕_{d|n_k} f(d)` along a divisibility chain.
pub fn summable_chain_extract(f: &GSeq, chain: &[usize], tol: Tolerance) -> Result<ChainReport> {
    validate_chain(f, chain)?;
    let terms = chain
        .iter()
        .map(|&k| gsum(divisors(k).into_iter().map(|d| f.at(d))))
        .collect();
    chain_report(chain, terms, tol)
}

/// Checks `a ⊙ f ⊕ b ⊙ g` for membership in `space`.
pub fn linear_combine_check(
    f: &GSeq,
    g: &GSeq,
    a: GReal,
    b: GReal,
    space: Space,
    mode: Mode,
) -> Result<MembershipReport> {
    let h = f.linear_combination(a, g, b)?;
    match space {
        Space::AC => check_arith_convergent(&h, mode, None),
        Space::AS => check_arith_summable(&h, mode, None),
        Space::PHI => {
            let tol = match mode.validate()? {
                Mode::Exact(tol) => tol,
                Mode::Epsilon(eps) => Tolerance::from_epsilon(eps)?,
            };
            Ok(classify_eventually_zero(&h, tol))
        }
    }
}

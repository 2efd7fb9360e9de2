//! Dimension constraints on forms that become hyperbolic, or nearly so, over
//! the function field of a quadric.

use std::fmt;

use serde::Serialize;

use crate::conjecture::{check_instance, ConjectureInstance, Verdict};
use crate::error::{Error, Result};
use crate::tower::{is_karpenko_admissible, s_of_dim, SplittingPattern};
use crate::{pow2, require_s};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KernelViolation {
    IndexNotDivisible { r: usize, index: u64, modulus: u64 },
    DegreeTooSmall { degree: u32, min: u32 },
}

impl fmt::Display for KernelViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            KernelViolation::IndexNotDivisible { r, index, modulus } => {
                write!(f, "i_{r} = {index} not divisible by {modulus}")
            }
            KernelViolation::DegreeTooSmall { degree, min } => {
                write!(f, "degree {degree} below s + 1 = {min}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelVerdict {
    pub passes: bool,
    pub violations: Vec<KernelViolation>,
}

/// Necessary conditions for `q_{F(p)}` to be hyperbolic: every higher Witt
/// index but the last is divisible by `2^{s+1}`, and `deg q >= s + 1`.
pub fn check_kernel_pattern(s: u32, pat: &SplittingPattern) -> Result<KernelVerdict> {
    require_s(s)?;
    if !pat.is_even() {
        return Err(Error::OddPattern { d0: pat.d0() });
    }
    let modulus = pow2(s + 1);
    let h = pat.height();
    let mut violations: Vec<KernelViolation> = (1..h)
        .map(|r| (r, pat.witt_index(r)))
        .filter(|&(_, index)| index % modulus != 0)
        .map(|(r, index)| KernelViolation::IndexNotDivisible { r, index, modulus })
        .collect();
    if pat.degree() < s + 1 {
        violations.push(KernelViolation::DegreeTooSmall {
            degree: pat.degree(),
            min: s + 1,
        });
    }
    Ok(KernelVerdict {
        passes: violations.is_empty(),
        violations,
    })
}

/// A pattern that passes [`check_kernel_pattern`] for a given `s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelScenario {
    s: u32,
    pattern: SplittingPattern,
}

impl KernelScenario {
    pub fn new(s: u32, pattern: SplittingPattern) -> Result<Self> {
        let verdict = check_kernel_pattern(s, &pattern)?;
        if !verdict.passes {
            return Err(Error::NotKernelAdmissible {
                s,
                dims: pattern.dims().to_vec(),
                violations: verdict.violations.iter().map(ToString::to_string).collect(),
            });
        }
        Ok(KernelScenario { s, pattern })
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn pattern(&self) -> &SplittingPattern {
        &self.pattern
    }

    pub fn degree(&self) -> u32 {
        self.pattern.degree()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "branch", rename_all = "snake_case")]
pub enum KernelClass {
    /// `n = s + 1` and `d_0 = 2^{s+1} m` with `m` odd.
    MinimalDegree { m: u64 },
    /// `n >= s + 2` and `d_0 = 2^{s+2} quotient`.
    HighDegree { quotient: u64 },
}

/// The degree dichotomy for Witt-kernel dimensions.
pub fn kernel_dim_classifier(sc: &KernelScenario) -> Result<KernelClass> {
    let (s, n, d0) = (sc.s(), sc.degree(), sc.pattern().d0());
    let broken = Error::DichotomyContradiction { s, degree: n, d0 };
    if n == s + 1 {
        let modulus = pow2(s + 1);
        let m = d0 / modulus;
        if d0 % modulus != 0 || m.is_multiple_of(2) {
            return Err(broken);
        }
        Ok(KernelClass::MinimalDegree { m })
    } else {
        let modulus = pow2(s + 2);
        if d0 % modulus != 0 {
            return Err(broken);
        }
        Ok(KernelClass::HighDegree {
            quotient: d0 / modulus,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HeightBound {
    /// `2^n + (h - 1) 2^{s+2}`.
    pub bound: u64,
    pub attained: bool,
    /// Every `i_r` with `r < h` equals `2^{s+1}`.
    pub indices_minimal: bool,
}

/// Lower bound on `d_0` from the height and degree of a Witt-kernel pattern.
pub fn corollary_3_6_bound(sc: &KernelScenario) -> HeightBound {
    let pat = sc.pattern();
    let h = pat.height() as u64;
    let bound = pow2(sc.degree()) + (h - 1) * pow2(sc.s() + 2);
    let minimal = pow2(sc.s() + 1);
    HeightBound {
        bound,
        attained: pat.d0() == bound,
        indices_minimal: (1..pat.height()).all(|r| pat.witt_index(r) == minimal),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FitzgeraldRegime {
    /// `dim p > (d_0 - 2^n)/2`.
    Strict,
    /// `dim p = (d_0 - 2^n)/2`.
    Border,
    /// `dim p < (d_0 - 2^n)/2`, nothing is forced.
    Below,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FitzgeraldRequirement {
    /// Strict regime: `h = 1`, i.e. `q` is similar to a Pfister form.
    HeightOne,
    HeightTwo,
    /// `d_0 = 2^n + 2^{s+2}`.
    BorderDimension,
    /// `dim p = 2^{s+1}`.
    BorderDimP,
    /// `n - 3 <= s <= n - 1`; the lower end comes from the height bound
    /// `d_0 >= 2^n + 2^{n-1}` for degree-`n` forms of height at least two.
    DegreeWindow,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FitzgeraldReport {
    pub s: u32,
    pub degree: u32,
    /// `(d_0 - 2^n)/2`.
    pub threshold: u64,
    pub regime: FitzgeraldRegime,
    pub holds: bool,
    pub failed: Vec<FitzgeraldRequirement>,
}

/// Fitzgerald's criterion for a Witt-kernel form to be similar to a Pfister
/// form, with the border case `2 dim p = d_0 - 2^n` worked out.
pub fn fitzgerald_check(dim_p: u64, pat: &SplittingPattern) -> Result<FitzgeraldReport> {
    let s = s_of_dim(dim_p)?;
    if !pat.is_even() {
        return Err(Error::OddPattern { d0: pat.d0() });
    }
    if dim_p > pat.d0() {
        return Err(Error::CasselsPfister {
            dim_p,
            dim_q: pat.d0(),
        });
    }
    let sc = KernelScenario::new(s, pat.clone())?;
    let n = sc.degree();
    let d0 = pat.d0();
    let h = pat.height();
    let threshold = (d0 - pow2(n)) / 2;
    let mut failed = Vec::new();
    let regime = if dim_p > threshold {
        if h != 1 {
            failed.push(FitzgeraldRequirement::HeightOne);
        }
        FitzgeraldRegime::Strict
    } else if dim_p == threshold {
        if h != 2 {
            failed.push(FitzgeraldRequirement::HeightTwo);
        }
        if d0 != pow2(n) + pow2(s + 2) {
            failed.push(FitzgeraldRequirement::BorderDimension);
        }
        if dim_p != pow2(s + 1) {
            failed.push(FitzgeraldRequirement::BorderDimP);
        }
        if !(s + 3 >= n && s < n) {
            failed.push(FitzgeraldRequirement::DegreeWindow);
        }
        FitzgeraldRegime::Border
    } else {
        FitzgeraldRegime::Below
    };
    Ok(FitzgeraldReport {
        s,
        degree: n,
        threshold,
        regime,
        holds: failed.is_empty(),
        failed,
    })
}

/// Input to [`refined_conjecture_check`]: `q_l` is the kernel of dimension `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RefinedCheck {
    s: u32,
    k: u64,
    pattern: SplittingPattern,
    l: usize,
}

impl RefinedCheck {
    pub fn new(s: u32, k: u64, pattern: SplittingPattern) -> Result<Self> {
        if s >= 63 || k >= pow2(s) {
            return Err(Error::VacuousRegime { k, s });
        }
        let l = pattern.dims().iter().position(|&d| d == k).ok_or_else(|| {
            Error::KernelStepMismatch {
                k,
                step: pattern.height(),
                dims: pattern.dims().to_vec(),
            }
        })?;
        Ok(RefinedCheck { s, k, pattern, l })
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn pattern(&self) -> &SplittingPattern {
        &self.pattern
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "route", rename_all = "snake_case")]
pub enum IndexRoute {
    /// `i_{r+1} <= (k + eps_r)/2`.
    Small,
    /// `i_{r+1} = b_r 2^{s+1} + eps_r` with `b_r >= 1`.
    Multiple { b: u64 },
    /// `d_r = 2^{s+1} - k`, `r = l - 1` and `i_{r+1} = 2^s - k`.
    Exceptional,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RefinedStep {
    pub r: usize,
    pub dim: u64,
    pub a: Option<u64>,
    pub eps: Option<i64>,
    pub next_index: u64,
    pub route: Option<IndexRoute>,
    pub passes: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RefinedReport {
    pub s: u32,
    pub k: u64,
    pub l: usize,
    pub passes: bool,
    pub steps: Vec<RefinedStep>,
}

/// For every `0 <= r < l`: `d_r = 2^{s+1} a_r + eps_r` with `a_r >= 1`,
/// `|eps_r| <= k`, and `i_{r+1}` is small, a shifted multiple of `2^{s+1}`, or
/// the single exceptional value at the step just before `q_l`.
pub fn refined_conjecture_check(rc: &RefinedCheck) -> RefinedReport {
    let (s, k, l) = (rc.s, rc.k, rc.l);
    let modulus = pow2(s + 1) as i64;
    let k_signed = k as i64;
    let steps: Vec<RefinedStep> = (0..l)
        .map(|r| {
            let dim = rc.pattern.dims()[r];
            let next_index = rc.pattern.witt_index(r + 1);
            // |eps| <= k < 2^s pins down a unique candidate
            let dim_signed = dim as i64;
            let a = (dim_signed + k_signed).div_euclid(modulus);
            let eps = dim_signed - a * modulus;
            let dimension_ok = a >= 1 && eps.abs() <= k_signed;
            let route = dimension_ok
                .then(|| index_route(s, k, l, r, dim, next_index, eps))
                .flatten();
            RefinedStep {
                r,
                dim,
                a: dimension_ok.then_some(a as u64),
                eps: dimension_ok.then_some(eps),
                next_index,
                route,
                passes: route.is_some(),
            }
        })
        .collect();
    RefinedReport {
        s,
        k,
        l,
        passes: steps.iter().all(|st| st.passes),
        steps,
    }
}

fn index_route(
    s: u32,
    k: u64,
    l: usize,
    r: usize,
    dim: u64,
    index: u64,
    eps: i64,
) -> Option<IndexRoute> {
    let modulus = pow2(s + 1) as i64;
    let index_signed = index as i64;
    if 2 * index_signed <= k as i64 + eps {
        return Some(IndexRoute::Small);
    }
    let shifted = index_signed - eps;
    if shifted >= modulus && shifted % modulus == 0 {
        return Some(IndexRoute::Multiple {
            b: (shifted / modulus) as u64,
        });
    }
    if dim + k == pow2(s + 1) && r + 1 == l && index + k == pow2(s) {
        return Some(IndexRoute::Exceptional);
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LadderReport {
    pub s: u32,
    pub k: u64,
    pub d_max: u64,
    /// Dimensions `D` that can precede a kernel of dimension `k`.
    pub dims: Vec<u64>,
    /// `2^N - k` for `N >= s + 1`, capped at `d_max`.
    pub ladder: Vec<u64>,
    pub matches: bool,
}

/// All `D <= d_max` with `D > 2^s`, `D = k (mod 2)`, `D > k` and
/// first Witt index `(D - k)/2` admissible, compared against the
/// `2^N - k` ladder.
pub fn lemma_5_5_scan(s: u32, k: u64, d_max: u64) -> Result<LadderReport> {
    if s >= 63 || k >= pow2(s) {
        return Err(Error::VacuousRegime { k, s });
    }
    if d_max < 2 {
        return Err(Error::TooSmall {
            what: "d_max",
            value: d_max,
            min: 2,
        });
    }
    let floor = pow2(s);
    let dims: Vec<u64> = (floor + 1..=d_max)
        .filter(|&d| d % 2 == k % 2 && d > k && is_karpenko_admissible(d, (d - k) / 2))
        .collect();
    let ladder: Vec<u64> = (s + 1..64)
        .map(|n| pow2(n) - k)
        .take_while(|&d| d <= d_max)
        .filter(|&d| d > floor)
        .collect();
    Ok(LadderReport {
        s,
        k,
        d_max,
        matches: dims == ladder,
        dims,
        ladder,
    })
}

/// Integer inventory of the construction showing the conjecture's bound is
/// sharp: `q = pi (x) <X_1..X_{a-1}> + X_a sigma + <X_{a+1}..X_{a+eps+l}>`
/// over a rational function field, with `pi` an `(s+1)`-fold Pfister form
/// and `sigma` a codimension-`l` subform of it.
///
/// Only the dimensions are produced. Anisotropy of `q` and of the
/// complementary form over `F(p)` are assumptions carried by the
/// construction, not checked here.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OptimalityWitness {
    pub s: u32,
    pub a: u64,
    pub k: u64,
    pub l_sub: u64,
    pub eps: i64,
    pub dim_q: u64,
    pub dim_p: u64,
    pub witt_index: u64,
    pub pfister_dim: u64,
    pub sigma_dim: u64,
    pub tau_dim: u64,
    pub variables: u64,
    /// Predicted dimension of the anisotropic part of `q_{F(p)}`.
    pub anisotropic_dim: u64,
    pub verdict: Verdict,
}

pub fn optimality_witness(s: u32, a: u64, k: u64, l_sub: u64) -> Result<OptimalityWitness> {
    if s >= 62 || k >= pow2(s) {
        return Err(Error::InvalidWitness(format!(
            "need k < 2^s, got k = {k}, s = {s}"
        )));
    }
    if 2 * l_sub > k {
        return Err(Error::InvalidWitness(format!(
            "need 2 l <= k, got l = {l_sub}, k = {k}"
        )));
    }
    if a < 1 {
        return Err(Error::InvalidWitness("need a >= 1".into()));
    }
    let eps = k - 2 * l_sub;
    let pfister_dim = pow2(s + 1);
    let dim_q = a * pfister_dim + eps;
    let witt_index = (dim_q - k) / 2;
    let inst = ConjectureInstance::new(pfister_dim, dim_q, witt_index)?;
    let verdict = check_instance(&inst)?.verdict;
    Ok(OptimalityWitness {
        s,
        a,
        k,
        l_sub,
        eps: eps as i64,
        dim_q,
        dim_p: pfister_dim,
        witt_index,
        pfister_dim,
        sigma_dim: pfister_dim - l_sub,
        tau_dim: l_sub,
        variables: a + eps + l_sub,
        anisotropic_dim: l_sub + eps + l_sub,
        verdict,
    })
}

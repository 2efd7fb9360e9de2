//! The dimension-congruence conjecture and its binomial reformulation.
//!
//! For anisotropic `p`, `q` with `2^s < dim p <= 2^{s+1}` and
//! `k = dim q - 2 i_W(q_{F(p)})`, the conjecture asserts
//! `dim q = a 2^{s+1} + eps` with `a >= 0` and `|eps| <= k`. Three
//! formulations are checked side by side; the first one decides the verdict.

use rayon::prelude::*;
use serde::Serialize;

use crate::dyadic::binom_is_odd;
use crate::error::{Error, Result};
use crate::tower::s_of_dim;
use crate::{pow2, require_s};

/// `(dim p, dim q, i_W(q_{F(p)}))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ConjectureInstance {
    dim_p: u64,
    dim_q: u64,
    witt_index: u64,
}

impl ConjectureInstance {
    pub fn new(dim_p: u64, dim_q: u64, witt_index: u64) -> Result<Self> {
        require_s(s_of_dim(dim_p)?)?;
        if dim_q < 2 {
            return Err(Error::TooSmall {
                what: "dim q",
                value: dim_q,
                min: 2,
            });
        }
        if witt_index.checked_mul(2).is_none_or(|w| w > dim_q) {
            return Err(Error::WittIndexOutOfRange {
                dim_q,
                witt: witt_index,
            });
        }
        Ok(ConjectureInstance {
            dim_p,
            dim_q,
            witt_index,
        })
    }

    pub fn dim_p(&self) -> u64 {
        self.dim_p
    }

    pub fn dim_q(&self) -> u64 {
        self.dim_q
    }

    pub fn witt_index(&self) -> u64 {
        self.witt_index
    }

    pub fn s(&self) -> u32 {
        s_of_dim(self.dim_p).expect("validated at construction")
    }

    /// Dimension of the anisotropic part of `q_{F(p)}`.
    pub fn k(&self) -> u64 {
        self.dim_q - 2 * self.witt_index
    }
}

/// Witness `d = a 2^{s+1} + eps`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EpsWitness {
    pub a: u64,
    pub eps: i64,
}

/// Witness `(d + k)/2 = a 2^s + mu`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MuWitness {
    pub a: u64,
    pub mu: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Condition1 {
    pub holds: bool,
    pub witness: Option<EpsWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Condition2 {
    pub holds: bool,
    pub witness: Option<MuWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Condition3 {
    pub holds: bool,
    /// Upper end of the checked range `k < l <= m`.
    pub m: i64,
    pub failing: Vec<u64>,
}

fn require_parity(d: u64, k: u64, s: u32) -> Result<()> {
    require_s(s)?;
    if !(d + k).is_multiple_of(2) {
        return Err(Error::ParityMismatch { d, k });
    }
    Ok(())
}

/// Nearest representation `d = a 2^{s+1} + eps`: minimal `|eps|`, positive
/// on ties.
fn nearest_multiple(d: u64, s: u32) -> EpsWitness {
    let modulus = pow2(s + 1);
    let (q, r) = (d / modulus, d % modulus);
    if r <= modulus - r {
        EpsWitness {
            a: q,
            eps: r as i64,
        }
    } else {
        EpsWitness {
            a: q + 1,
            eps: r as i64 - modulus as i64,
        }
    }
}

/// `d = a 2^{s+1} + eps` for some `a >= 0` and `-k <= eps <= k`.
pub fn condition1(d: u64, k: u64, s: u32) -> Result<Condition1> {
    require_parity(d, k, s)?;
    let w = nearest_multiple(d, s);
    let holds = w.eps.unsigned_abs() <= k;
    Ok(Condition1 {
        holds,
        witness: holds.then_some(w),
    })
}

/// `(d + k)/2 = a 2^s + mu` for some `a >= 0` and `0 <= mu <= k`.
pub fn condition2(d: u64, k: u64, s: u32) -> Result<Condition2> {
    require_parity(d, k, s)?;
    let half = (d + k) / 2;
    let w = MuWitness {
        a: half >> s,
        mu: half & (pow2(s) - 1),
    };
    let holds = w.mu <= k;
    Ok(Condition2 {
        holds,
        witness: holds.then_some(w),
    })
}

/// `m = 2^s - 2` if `k >= 2^{s-1}`, else `2^{s-1}`.
///
/// At `s = 0` the half-power is read as `1/2`: `k >= 1` gives `-1`, and
/// `k = 0` gives `floor(1/2) = 0`. Either way the range `k < l <= m` is empty.
pub fn range_top(k: u64, s: u32) -> i64 {
    if s == 0 {
        return if k >= 1 { -1 } else { 0 };
    }
    if k >= pow2(s - 1) {
        pow2(s) as i64 - 2
    } else {
        pow2(s - 1) as i64
    }
}

/// `C((d+k)/2, l)` is even for every `k < l <= m`.
pub fn condition3(d: u64, k: u64, s: u32) -> Result<Condition3> {
    require_parity(d, k, s)?;
    let half = (d + k) / 2;
    let m = range_top(k, s);
    let failing: Vec<u64> = if m > k as i64 {
        (k + 1..=m as u64)
            .filter(|&l| binom_is_odd(half, l))
            .collect()
    } else {
        Vec::new()
    };
    Ok(Condition3 {
        holds: failing.is_empty(),
        m,
        failing,
    })
}

fn condition3_holds(half: u64, k: u64, s: u32) -> bool {
    let m = range_top(k, s);
    m <= k as i64 || (k + 1..=m as u64).all(|l| !binom_is_odd(half, l))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Conforms,
    Violates,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub s: u32,
    pub k: u64,
    pub cond1: Condition1,
    pub cond2: Condition2,
    pub cond3: Condition3,
}

impl ConditionReport {
    pub fn m(&self) -> i64 {
        self.cond3.m
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceCheck {
    pub instance: ConjectureInstance,
    pub verdict: Verdict,
    pub report: ConditionReport,
}

/// All three conditions for `(dim q, k, s)`; the verdict follows condition 1.
pub fn check_instance(inst: &ConjectureInstance) -> Result<InstanceCheck> {
    let (d, k, s) = (inst.dim_q(), inst.k(), inst.s());
    let report = ConditionReport {
        s,
        k,
        cond1: condition1(d, k, s)?,
        cond2: condition2(d, k, s)?,
        cond3: condition3(d, k, s)?,
    };
    let verdict = if report.cond1.holds {
        Verdict::Conforms
    } else {
        Verdict::Violates
    };
    Ok(InstanceCheck {
        instance: *inst,
        verdict,
        report,
    })
}

/// A triple where the three conditions do not all agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Mismatch {
    pub d: u64,
    pub k: u64,
    pub s: u32,
    pub cond1: bool,
    pub cond2: bool,
    pub cond3: bool,
    /// The mismatch has the known boundary shape: `k >= 2^{s-1}`,
    /// `(d+k)/2 = 2^s - 1 (mod 2^s)` and `k >= m`.
    pub boundary_shape: bool,
}

impl Mismatch {
    pub fn splits_1_2(&self) -> bool {
        self.cond1 != self.cond2
    }

    pub fn splits_1_3(&self) -> bool {
        self.cond1 != self.cond3
    }
}

/// Whether condition 1 held for every scanned `d` at a given `(s, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VacuityCell {
    pub s: u32,
    pub k: u64,
    pub always_true: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub d_max: u64,
    pub s_max: u32,
    pub triples: u64,
    pub mismatches: Vec<Mismatch>,
    pub vacuity: Vec<VacuityCell>,
}

impl ScanReport {
    pub fn count_1_2(&self) -> usize {
        self.mismatches.iter().filter(|m| m.splits_1_2()).count()
    }

    pub fn count_1_3(&self) -> usize {
        self.mismatches.iter().filter(|m| m.splits_1_3()).count()
    }

    pub fn all_boundary_shaped(&self) -> bool {
        self.mismatches.iter().all(|m| m.boundary_shape)
    }

    /// The `(s, k)` cells where condition 1 held for every scanned `d`.
    pub fn always_true_cells(&self) -> impl Iterator<Item = &VacuityCell> {
        self.vacuity.iter().filter(|c| c.always_true)
    }
}

fn boundary_shape(d: u64, k: u64, s: u32) -> bool {
    let half = (d + k) / 2;
    s >= 1 && k >= pow2(s - 1) && half % pow2(s) == pow2(s) - 1 && k as i64 >= range_top(k, s)
}

/// Compares the three conditions on every `(d, k, s)` with
/// `2 <= d <= d_max`, `0 <= s <= s_max`, `0 <= k < 2^s` and `d + k` even.
///
/// Each `(s, k)` column runs as an independent task; the merged result is
/// sorted, so the output does not depend on the thread count.
pub fn equivalence_scan(d_max: u64, s_max: u32) -> ScanReport {
    let cells: Vec<(u32, u64)> = (0..=s_max)
        .flat_map(|s| (0..pow2(s)).map(move |k| (s, k)))
        .collect();
    let columns: Vec<(u64, Vec<Mismatch>, VacuityCell)> = cells
        .into_par_iter()
        .map(|(s, k)| {
            let mut found = Vec::new();
            let mut triples = 0u64;
            let mut always = true;
            let start = if k % 2 == 0 { 2 } else { 3 };
            for d in (start..=d_max).step_by(2) {
                triples += 1;
                let half = (d + k) / 2;
                let c1 = nearest_multiple(d, s).eps.unsigned_abs() <= k;
                let c2 = half & (pow2(s) - 1) <= k;
                let c3 = condition3_holds(half, k, s);
                always &= c1;
                if !(c1 == c2 && c2 == c3) {
                    found.push(Mismatch {
                        d,
                        k,
                        s,
                        cond1: c1,
                        cond2: c2,
                        cond3: c3,
                        boundary_shape: boundary_shape(d, k, s),
                    });
                }
            }
            let cell = VacuityCell {
                s,
                k,
                always_true: always && triples > 0,
            };
            (triples, found, cell)
        })
        .collect();
    let mut triples = 0;
    let mut mismatches = Vec::new();
    let mut vacuity = Vec::new();
    for (t, found, cell) in columns {
        triples += t;
        mismatches.extend(found);
        vacuity.push(cell);
    }
    mismatches.sort();
    ScanReport {
        d_max,
        s_max,
        triples,
        mismatches,
        vacuity,
    }
}

/// The first proven result that certifies an instance, in a fixed order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Coverage {
    /// `k >= 2^s - 1`: every `d` of the right parity lies within `k` of a
    /// multiple of `2^{s+1}`.
    Vacuous,
    /// `k < 2^{s-1}`.
    Thm1_3,
    /// `2^{s+1} - 2 <= dim p <= 2^{s+1}`.
    Thm4_8Case2,
    /// `p` is a Pfister neighbour.
    Thm4_8Case3,
    /// `k <= 7`.
    Thm5_2K7,
    /// `dim q <= 2^{s+2} + k`.
    Thm5_2Dim,
    /// `dim q <= 2^{s+1} + 2^{s-1}`.
    Cor5_10,
    Uncovered,
}

impl Coverage {
    pub fn tag(self) -> &'static str {
        match self {
            Coverage::Vacuous => "VACUOUS",
            Coverage::Thm1_3 => "THM_1_3",
            Coverage::Thm4_8Case2 => "THM_4_8_CASE2",
            Coverage::Thm4_8Case3 => "THM_4_8_CASE3",
            Coverage::Thm5_2K7 => "THM_5_2_K7",
            Coverage::Thm5_2Dim => "THM_5_2_DIM",
            Coverage::Cor5_10 => "COR_5_10",
            Coverage::Uncovered => "UNCOVERED",
        }
    }
}

/// Which theorem, if any, certifies the conjecture for `inst`. The
/// Pfister-neighbour property of `p` is supplied by the caller.
pub fn coverage_classifier(inst: &ConjectureInstance, p_is_pfister_neighbour: bool) -> Coverage {
    let s = inst.s();
    let k = inst.k();
    let (dim_p, dim_q) = (inst.dim_p(), inst.dim_q());
    // 2^{s-1} doubled, to stay in integers at s = 0
    let twice_half = pow2(s);
    if k + 1 >= pow2(s) {
        Coverage::Vacuous
    } else if 2 * k < twice_half {
        Coverage::Thm1_3
    } else if dim_p + 2 >= pow2(s + 1) {
        Coverage::Thm4_8Case2
    } else if p_is_pfister_neighbour {
        Coverage::Thm4_8Case3
    } else if k <= 7 {
        Coverage::Thm5_2K7
    } else if dim_q <= pow2(s + 2) + k {
        Coverage::Thm5_2Dim
    } else if 2 * dim_q <= pow2(s + 2) + twice_half {
        Coverage::Cor5_10
    } else {
        Coverage::Uncovered
    }
}

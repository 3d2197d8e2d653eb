//! Singleton and quantum Hamming bounds on parameter records.

use num_bigint::{BigInt, BigUint};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::subsystem::ParamRecord;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Default)]
pub struct BoundReport {
    /// (n − 2d + 2) − (k + r)
    #[serde(skip_serializing_if = "Option::is_none")]
    pub singleton_slack: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mds: Option<bool>,
    /// q^{n−k−r} − Σ_{j ≤ (d−1)/2} C(n,j)(q²−1)^j, as a decimal string
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hamming_slack: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perfect: Option<bool>,
    pub notes: Vec<String>,
}

/// k + r ≤ n − 2d + 2. Equality on an F_q-linear code is MDS; for other codes
/// the bound itself is only conjectured, which the notes record.
pub fn singleton_check(p: &ParamRecord) -> BoundReport {
    let mut report = BoundReport::default();
    let Some(d) = p.d else {
        report.notes.push("distance unknown".into());
        return report;
    };
    let m = p.m as i64;
    let scaled = (p.n as i64 - 2 * d as i64 + 2) * m - (p.k_exp + p.r_exp) as i64;
    if scaled % m != 0 {
        report.notes.push("k + r is not an integer; slack not defined".into());
        return report;
    }
    let slack = scaled / m;
    report.singleton_slack = Some(slack);
    report.mds = Some(slack == 0 && p.linear);
    if !p.linear {
        report.notes.push("conjectural: the Singleton bound is proven for F_q-linear codes only".into());
    }
    if p.d_at_least {
        report.notes.push("d is a lower bound".into());
    }
    report
}

fn binomial(n: usize, k: usize) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Left-hand side Σ_{j=0}^{⌊(d−1)/2⌋} C(n,j)(q²−1)^j.
pub fn hamming_sphere(n: usize, q: u32, d: usize) -> BigUint {
    let t = d.saturating_sub(1) / 2;
    let base = BigUint::from(q as u64 * q as u64 - 1);
    (0..=t.min(n)).map(|j| binomial(n, j) * base.pow(j as u32)).sum()
}

/// Standard quantum Hamming bound on the associated pure ((n, KR, d))
/// stabilizer code; perfect when it holds with equality.
pub fn hamming_check(p: &ParamRecord) -> Result<BoundReport> {
    if p.pure != Some(true) {
        return Err(Error::PurityRequired("perfectness is defined for pure codes".into()));
    }
    let d = p.d.ok_or_else(|| Error::Precondition("distance unknown".into()))?;
    let exp = p.n * p.m as usize - p.k_exp - p.r_exp;
    let rhs = BigUint::from(p.p).pow(exp as u32);
    let lhs = hamming_sphere(p.n, p.q(), d);
    let slack = BigInt::from(rhs) - BigInt::from(lhs);
    let mut notes = vec!["standard quantum Hamming bound on the associated stabilizer code".to_string()];
    if p.d_at_least {
        notes.push("d is a lower bound".into());
    }
    Ok(BoundReport {
        perfect: Some(slack == BigInt::from(0)),
        hamming_slack: Some(slack.to_string()),
        notes,
        ..BoundReport::default()
    })
}

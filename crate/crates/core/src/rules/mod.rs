//! Propagation rules: trading K against R, changing the length, combining
//! codes, the Hermitian construction and the Reed–Solomon MDS families.
//!
//! Constructive rules return a [`SubsystemCode`] and check every claim they
//! can; parameter-level rules return a [`ParamRecord`] with claims marked
//! `asserted`.

pub mod families;
pub mod table;

use serde::{Serialize, Serializer};

use crate::codes::{self, AdditiveCode, ClassicalCode, WeightMethod};
use crate::config::AnalysisConfig;
use crate::error::{Error, Result};
use crate::gf::Tower;
use crate::subsystem::{Distance, ParamRecord, Purity, SubsystemCode};
use crate::symplectic::{adjoin_pair, extend_to_full_symplectic_basis, hyperbolic_decompose};

pub use families::{mds_family, Family, MdsFamilySpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verification {
    VerifiedExhaustive,
    /// a witness meets a proven lower bound
    VerifiedAnalytic,
    /// only upper-bound witnesses were available, and none contradicts the claim
    WitnessConsistent,
    Asserted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub statement: String,
    pub verification: Verification,
}

impl Claim {
    fn new(statement: impl Into<String>, verification: Verification) -> Self {
        Claim { statement: statement.into(), verification }
    }

    fn asserted(statement: impl Into<String>) -> Self {
        Self::new(statement, Verification::Asserted)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step {
    pub rule: String,
    pub inputs: Vec<String>,
    pub claims: Vec<Claim>,
    /// weakest verification among the claims
    pub verification: Verification,
}

impl Step {
    pub fn new(rule: impl Into<String>, inputs: Vec<String>, claims: Vec<Claim>) -> Self {
        let verification = weakest(&claims);
        Step { rule: rule.into(), inputs, claims, verification }
    }
}

/// Weakest verification level in `claims`; exhaustive when empty.
pub fn weakest(claims: &[Claim]) -> Verification {
    claims.iter().fold(Verification::VerifiedExhaustive, |acc, c| acc.max_strength(c.verification))
}

#[derive(Debug, Clone)]
pub enum RuleOutput {
    Code(Box<SubsystemCode>),
    Params(ParamRecord),
}

#[derive(Debug, Clone)]
pub struct RuleResult {
    pub rule: String,
    pub output: RuleOutput,
    pub claims: Vec<Claim>,
    pub provenance: Vec<Step>,
}

impl RuleResult {
    pub fn code(&self) -> Option<&SubsystemCode> {
        match &self.output {
            RuleOutput::Code(c) => Some(c),
            RuleOutput::Params(_) => None,
        }
    }

    pub fn into_code(self) -> Option<SubsystemCode> {
        match self.output {
            RuleOutput::Code(c) => Some(*c),
            RuleOutput::Params(_) => None,
        }
    }

    pub fn params(&self) -> ParamRecord {
        match &self.output {
            RuleOutput::Code(c) => {
                let mut p = c.params();
                p.provenance = self.provenance.iter().map(|s| s.rule.clone()).collect();
                p
            }
            RuleOutput::Params(p) => p.clone(),
        }
    }

    fn single(rule: &str, inputs: Vec<String>, output: RuleOutput, claims: Vec<Claim>) -> Self {
        RuleResult { rule: rule.to_string(), provenance: vec![Step::new(rule, inputs, claims.clone())], output, claims }
    }
}

impl Serialize for RuleResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        #[serde(untagged)]
        enum Out {
            Code(Box<crate::subsystem::AnalysisReport>),
            Params(ParamRecord),
        }
        #[derive(Serialize)]
        struct Repr<'a> {
            rule: &'a str,
            output: Out,
            claims: &'a [Claim],
            provenance: &'a [Step],
        }
        let output = match &self.output {
            RuleOutput::Code(c) => Out::Code(Box::new(c.report())),
            RuleOutput::Params(p) => Out::Params(p.clone()),
        };
        Repr { rule: &self.rule, output, claims: &self.claims, provenance: &self.provenance }.serialize(s)
    }
}

fn verified_by(d: &Distance) -> Verification {
    match d.method {
        WeightMethod::Exhaustive => Verification::VerifiedExhaustive,
        WeightMethod::Analytic => Verification::VerifiedAnalytic,
        WeightMethod::Witness => Verification::WitnessConsistent,
    }
}

/// Checks d_out ≥ d_in. `d_in` is exact or an upper bound (witness).
fn claim_distance_at_least(out: &SubsystemCode, d_in: Option<&Distance>, text: &str) -> Result<Claim> {
    let (Some(o), Some(i)) = (out.distance(), d_in) else {
        return Ok(Claim::asserted(text));
    };
    if o.value >= i.value {
        return Ok(Claim::new(text, verified_by(o)));
    }
    // o.value < i.value: d_out ≤ o.value < i.value
    if i.is_exact() {
        return Err(Error::ClaimViolated(format!("{text}: found {} < {}", o.value, i.value)));
    }
    Ok(Claim::asserted(text))
}

/// Checks d_out = d_in.
fn claim_distance_equal(out: &SubsystemCode, d_in: Option<&Distance>, text: &str) -> Result<Claim> {
    let (Some(o), Some(i)) = (out.distance(), d_in) else {
        return Ok(Claim::asserted(text));
    };
    if o.is_exact() && i.is_exact() {
        if o.value != i.value {
            return Err(Error::ClaimViolated(format!("{text}: {} ≠ {}", o.value, i.value)));
        }
        return Ok(Claim::new(text, verified_by(o).max_strength(verified_by(i))));
    }
    let exact_side = if o.is_exact() {
        Some((o, i))
    } else if i.is_exact() {
        Some((i, o))
    } else {
        None
    };
    if let Some((e, w)) = exact_side {
        // the witness side is an upper bound on the true value, which must equal e
        if w.value < e.value {
            return Err(Error::ClaimViolated(format!("{text}: witness {} below {}", w.value, e.value)));
        }
    }
    Ok(Claim::new(text, Verification::WitnessConsistent))
}

impl Verification {
    /// The weaker of two verification levels.
    fn max_strength(self, other: Verification) -> Verification {
        let rank = |v: Verification| match v {
            Verification::VerifiedExhaustive => 0,
            Verification::VerifiedAnalytic => 1,
            Verification::WitnessConsistent => 2,
            Verification::Asserted => 3,
        };
        if rank(self) >= rank(other) {
            self
        } else {
            other
        }
    }
}

fn claim_pure_to(out: &SubsystemCode, d: usize, text: &str, cfg: &AnalysisConfig) -> Result<Claim> {
    match out.is_pure_to(d, cfg) {
        Ok(true) => {
            let v = match out.swt_c().map(|w| w.kind) {
                Some(crate::subsystem::BoundKind::Exact) => Verification::VerifiedExhaustive,
                _ if d <= 1 => Verification::VerifiedExhaustive,
                _ => Verification::VerifiedAnalytic,
            };
            Ok(Claim::new(text, v))
        }
        Ok(false) => Err(Error::ClaimViolated(text.to_string())),
        Err(Error::PurityUnknown(_)) => Ok(Claim::asserted(text)),
        Err(e) => Err(e),
    }
}

fn claim_exact(ok: bool, text: &str) -> Result<Claim> {
    if ok {
        Ok(Claim::new(text, Verification::VerifiedExhaustive))
    } else {
        Err(Error::ClaimViolated(text.to_string()))
    }
}

fn claim_pure(out: &SubsystemCode, text: &str) -> Result<Claim> {
    match out.purity() {
        Purity::Pure => {
            let v = match (out.swt_c().map(|w| w.kind), out.distance()) {
                (Some(crate::subsystem::BoundKind::Exact), Some(d)) if d.method == WeightMethod::Exhaustive => {
                    Verification::VerifiedExhaustive
                }
                _ => Verification::VerifiedAnalytic,
            };
            Ok(Claim::new(text, v))
        }
        Purity::Impure { .. } => Err(Error::ClaimViolated(text.to_string())),
        Purity::PureTo(_) | Purity::Unknown => Ok(Claim::asserted(text)),
    }
}

/// Weight to which the code is known to be pure (swt(C) ≥ value).
fn known_purity(code: &SubsystemCode) -> usize {
    match code.purity() {
        Purity::Pure => code.distance().map_or(1, |d| d.value),
        Purity::PureTo(d) => d,
        Purity::Impure { swt_c } => swt_c,
        Purity::Unknown => 1,
    }
}

fn check_coeff_degree(code: &SubsystemCode, t: u32) -> Result<AdditiveCode> {
    let m = code.m();
    if t != 1 && t != m {
        return Err(Error::InvalidCoeffDegree { t, m });
    }
    if t == m && m > 1 && !code.is_linear() {
        return Err(Error::NotLinear);
    }
    code.code().with_coeff_degree(t)
}

/// Lower bound on swt(D^⊥s) carried to a code with the same radical.
fn inherited_bound(from: &SubsystemCode, to: &AdditiveCode) -> Option<usize> {
    let bound = from.radical_dual_bound()?;
    let radical = to.intersect(&to.dual_symp()).ok()?;
    let same = radical.with_coeff_degree(1).ok()? == from.radical().with_coeff_degree(1).ok()?;
    same.then_some(bound)
}

/// ((n,K,R,d)) → ((n, K/p^t, p^t R, ≥ d)), adjoining the first new hyperbolic pair.
pub fn shrink_k(code: &SubsystemCode, t: u32, cfg: &AnalysisConfig) -> Result<RuleResult> {
    let c = check_coeff_degree(code, t)?;
    let t_us = t as usize;
    if code.k_exp() == 0 {
        return Err(Error::Precondition("K = 1: nothing to trade".into()));
    }
    if code.k_exp() < t_us {
        return Err(Error::Precondition(format!("K = p^{} is smaller than p^{t}", code.k_exp())));
    }
    if code.k_exp() == t_us {
        match code.purity() {
            Purity::Pure => {}
            Purity::Unknown | Purity::PureTo(_) => {
                return Err(Error::PurityRequired("K = p^t needs a pure code, and purity is not established".into()))
            }
            Purity::Impure { .. } => return Err(Error::PurityRequired("K = p^t needs a pure code".into())),
        }
    }
    let dec = hyperbolic_decompose(&c);
    let basis = extend_to_full_symplectic_basis(&dec, c.n())?;
    let index = dec.s() + dec.r();
    if index >= basis.len() {
        return Err(Error::Construction("no new hyperbolic pair available".into()));
    }
    let cm = adjoin_pair(&c, &basis, index);
    let bound = inherited_bound(code, &cm);
    let out = SubsystemCode::derive_with_bound(&cm, cfg, bound)?;

    let d_prime = known_purity(code);
    let mut claims = vec![
        claim_exact(out.k_exp() + t_us == code.k_exp(), &format!("K' = K/p^{t}"))?,
        claim_exact(out.r_exp() == code.r_exp() + t_us, &format!("R' = p^{t}·R"))?,
        claim_exact(out.radical() == &c.intersect(&c.dual_symp())?, "D' = D")?,
    ];
    if code.k_exp() == t_us {
        claims.push(claim_distance_equal(&out, code.distance(), "d' = d")?);
    } else {
        claims.push(claim_distance_at_least(&out, code.distance(), "d' ≥ d")?);
        let target = code.distance().map_or(1, |d| d.value).min(d_prime);
        claims.push(claim_pure_to(&out, target, &format!("pure to min{{d, d'}} = {target}"), cfg)?);
    }
    if t > 1 {
        claims.push(claim_exact(out.is_linear(), "F_q-linear")?);
    }
    let inputs = vec![code.params().dims_string()];
    Ok(RuleResult::single("shrink_k", inputs, RuleOutput::Code(Box::new(out)), claims))
}

/// Pure ((n,K,R,d)) with R > 1 → pure ((n, p^t K, R/p^t, d)), dropping the last pair.
pub fn grow_k(code: &SubsystemCode, t: u32, cfg: &AnalysisConfig) -> Result<RuleResult> {
    let c = check_coeff_degree(code, t)?;
    match code.purity() {
        Purity::Pure => {}
        Purity::Impure { swt_c } => {
            return Err(Error::PurityRequired(format!("the code is impure (swt(C) = {swt_c})")));
        }
        _ => return Err(Error::PurityRequired("purity of the input is not established".into())),
    }
    if code.r_exp() < t as usize {
        return Err(Error::Precondition(format!("R = p^{} leaves nothing to trade", code.r_exp())));
    }
    let dec = hyperbolic_decompose(&c);
    if dec.r() == 0 {
        return Err(Error::Construction("no hyperbolic pair to drop".into()));
    }
    let cm = dec.span_prefix(dec.r() - 1);
    let bound = inherited_bound(code, &cm);
    let out = SubsystemCode::derive_with_bound(&cm, cfg, bound)?;
    let t_us = t as usize;
    let mut claims = vec![
        claim_exact(out.k_exp() == code.k_exp() + t_us, &format!("K' = p^{t}·K"))?,
        claim_exact(out.r_exp() + t_us == code.r_exp(), &format!("R' = R/p^{t}"))?,
        claim_distance_equal(&out, code.distance(), "d' = d")?,
        claim_pure(&out, "pure")?,
    ];
    if t > 1 {
        claims.push(claim_exact(out.is_linear(), "F_q-linear")?);
    }
    let _ = cfg;
    let inputs = vec![code.params().dims_string()];
    Ok(RuleResult::single("grow_k", inputs, RuleOutput::Code(Box::new(out)), claims))
}

fn chain(rule: &str, steps: Vec<RuleResult>, start: &SubsystemCode) -> RuleResult {
    let mut provenance: Vec<Step> = Vec::new();
    let mut output = RuleOutput::Code(Box::new(start.clone()));
    for s in steps {
        provenance.extend(s.provenance);
        output = s.output;
    }
    RuleResult { rule: rule.to_string(), output, claims: Vec::new(), provenance }
}

fn finish(mut res: RuleResult, start: &SubsystemCode) -> RuleResult {
    if res.claims.is_empty() {
        res.claims.push(Claim::new("identity (zero steps)", Verification::VerifiedExhaustive));
    }
    res.provenance.push(Step::new(res.rule.clone(), vec![start.params().dims_string()], res.claims.clone()));
    res
}

/// [[n,k,0,d]] → [[n, k−r, r, ≥ d]] for 0 ≤ r < k, in units of p^t.
pub fn stabilizer_to_subsystem(code: &SubsystemCode, r: usize, t: u32, cfg: &AnalysisConfig) -> Result<RuleResult> {
    if code.r_exp() != 0 {
        return Err(Error::Precondition("input must be a stabilizer code (R = 1)".into()));
    }
    let k = code.k_exp() / t.max(1) as usize;
    if r >= k.max(1) && r != 0 {
        return Err(Error::OutOfRange(format!("r = {r} must satisfy 0 ≤ r < k = {k}")));
    }
    let mut steps = Vec::with_capacity(r);
    let mut cur = code.clone();
    for _ in 0..r {
        let step = shrink_k(&cur, t, cfg)?;
        cur = step.code().expect("constructive").clone();
        steps.push(step);
    }
    let mut res = chain("stabilizer_to_subsystem", steps, code);
    if r > 0 {
        res.claims.push(claim_exact(cur.r_exp() == r * t as usize, &format!("log_p R = {}", r * t as usize))?);
        res.claims.push(claim_distance_at_least(&cur, code.distance(), "d_r ≥ d")?);
    }
    Ok(finish(res, code))
}

/// Pure [[n,k,r,d]] → pure [[n, k+r, d]] stabilizer code.
pub fn subsystem_to_stabilizer(code: &SubsystemCode, t: u32, cfg: &AnalysisConfig) -> Result<RuleResult> {
    if !code.purity().is_pure() {
        return Err(Error::PurityRequired(format!("the code is {}", code.purity().label())));
    }
    if !code.r_exp().is_multiple_of(t as usize) {
        return Err(Error::NonIntegral(format!("R = p^{} is not a power of p^{t}", code.r_exp())));
    }
    let mut steps = Vec::new();
    let mut cur = code.clone();
    while cur.r_exp() > 0 {
        let step = grow_k(&cur, t, cfg)?;
        cur = step.code().expect("constructive").clone();
        steps.push(step);
    }
    let mut res = chain("subsystem_to_stabilizer", steps, code);
    if cur.r_exp() != code.r_exp() {
        res.claims.push(claim_exact(cur.r_exp() == 0, "R = 1")?);
        res.claims.push(claim_distance_equal(&cur, code.distance(), "d unchanged")?);
        res.claims.push(claim_pure(&cur, "pure")?);
    }
    Ok(finish(res, code))
}

/// ((n,K,R,d)) with K > 1 → ((n+1, K, R, ≥ d)) pure to 1, via
/// C' = {(aα|b0) : (a|b) ∈ C, α ∈ F_q}.
pub fn extend_length(code: &SubsystemCode, cfg: &AnalysisConfig) -> Result<RuleResult> {
    if code.k_exp() == 0 {
        return Err(Error::Precondition("K = 1".into()));
    }
    let c = code.code();
    let cp = c.append_free_x_coordinate();
    let out = SubsystemCode::derive(&cp, cfg)?;
    let dual_ok = cp.dual_symp() == c.dual_symp().append_free_x_coordinate();
    let mut unit = vec![0; 2 * (c.n() + 1)];
    unit[c.n()] = 1;
    let weight_one = codes::SympVector::from_concat(c.field(), &unit)?;
    let claims = vec![
        claim_exact(out.k_exp() == code.k_exp(), "K' = K")?,
        claim_exact(out.r_exp() == code.r_exp(), "R' = R")?,
        claim_distance_at_least(&out, code.distance(), "d' ≥ d")?,
        claim_exact(cp.contains(&weight_one), "pure to 1 (C' has a weight-1 element)")?,
        claim_exact(dual_ok, "(C^⊥s)' = (C')^⊥s")?,
    ];
    let inputs = vec![code.params().dims_string()];
    Ok(RuleResult::single("extend_length", inputs, RuleOutput::Code(Box::new(out)), claims))
}

fn require_pure(p: &ParamRecord, what: &str) -> Result<()> {
    if p.pure != Some(true) {
        return Err(Error::PurityRequired(format!("{what} {p} is not marked pure")));
    }
    Ok(())
}

fn integral(p: &ParamRecord) -> Result<(usize, usize, usize)> {
    match (p.k_integral(), p.r_integral(), p.d) {
        (Some(k), Some(r), Some(d)) => Ok((k, r, d)),
        _ => Err(Error::NonIntegral(format!("{} needs integral k, r and known d", p.dims_string()))),
    }
}

fn params_result(
    rule: &str,
    inputs: Vec<&ParamRecord>,
    mut out: ParamRecord,
    claims: Vec<Claim>,
) -> Result<RuleResult> {
    out.check()?;
    let mut prov: Vec<String> = inputs.iter().flat_map(|p| p.provenance.clone()).collect();
    prov.push(rule.to_string());
    out.provenance = prov;
    let ins = inputs.iter().map(|p| p.to_string()).collect();
    Ok(RuleResult::single(rule, ins, RuleOutput::Params(out), claims))
}

/// Pure ((n,K,R,d)) → pure ((n−1, qK, R, d−1)).
pub fn shorten_length(p: &ParamRecord) -> Result<RuleResult> {
    require_pure(p, "input")?;
    let d = p.d.ok_or_else(|| Error::Precondition("distance unknown".into()))?;
    if d < 2 {
        return Err(Error::Precondition("d must be at least 2".into()));
    }
    if p.n < 2 {
        return Err(Error::Precondition("n must be at least 2".into()));
    }
    let out = ParamRecord {
        n: p.n - 1,
        k_exp: p.k_exp + p.m as usize,
        d: Some(d - 1),
        pure: Some(true),
        provenance: Vec::new(),
        ..p.clone()
    };
    let claims = vec![Claim::asserted("pure ((n−1, qK, R, d−1))_q")];
    params_result("shorten_length", vec![p], out, claims)
}

/// Pure [[n1,k1,r1,d1]]_2, [[n2,k2,r2,d2]]_2 with k2+r2 ≤ n1 →
/// [[n1+n2−k2−r2, k1+r1−r, r, ≥ min{d1, d1+d2−k2−r2}]]_2.
pub fn combine_disjoint(p1: &ParamRecord, p2: &ParamRecord, r: usize) -> Result<RuleResult> {
    if p1.q() != 2 || p2.q() != 2 {
        return Err(Error::Precondition("both codes must be binary".into()));
    }
    require_pure(p1, "first code")?;
    require_pure(p2, "second code")?;
    let (k1, r1, d1) = integral(p1)?;
    let (k2, r2, d2) = integral(p2)?;
    if k2 + r2 > p1.n {
        return Err(Error::Precondition(format!("k2 + r2 = {} exceeds n1 = {}", k2 + r2, p1.n)));
    }
    if r >= k1 + r1 {
        return Err(Error::OutOfRange(format!("r = {r} must be below k1 + r1 = {}", k1 + r1)));
    }
    let second = d1 as i64 + d2 as i64 - (k2 + r2) as i64;
    let d = (d1 as i64).min(second).max(1) as usize;
    let out = ParamRecord {
        n: p1.n + p2.n - k2 - r2,
        p: 2,
        m: 1,
        k_exp: k1 + r1 - r,
        r_exp: r,
        d: Some(d),
        d_at_least: true,
        pure: None,
        linear: true,
        provenance: Vec::new(),
    };
    let claims = vec![
        Claim::asserted(format!("d ≥ min{{d1, d1+d2−k2−r2}} = {d}")),
        Claim::asserted("purity of the output not asserted"),
    ];
    params_result("combine_disjoint", vec![p1, p2], out, claims)
}

/// Pure [[n,k1,r1,d1]] ⊇ [[n,k2,r2,d2]] → pure [[2n, k1+k2+r1+r2−r, r, ≥ min{d1, 2d2}]].
pub fn combine_nested(p1: &ParamRecord, p2: &ParamRecord, r: usize, subset_assumed: bool) -> Result<RuleResult> {
    if p1.n != p2.n {
        return Err(Error::Precondition(format!("lengths differ: {} and {}", p1.n, p2.n)));
    }
    if p1.q() != p2.q() {
        return Err(Error::Precondition("fields differ".into()));
    }
    if !subset_assumed {
        return Err(Error::Precondition("Q2 ⊆ Q1 must be asserted by the caller".into()));
    }
    require_pure(p1, "first code")?;
    require_pure(p2, "second code")?;
    let (k1, r1, d1) = integral(p1)?;
    let (k2, r2, d2) = integral(p2)?;
    let total = k1 + k2 + r1 + r2;
    if r > total {
        return Err(Error::OutOfRange(format!("r = {r} exceeds k1+k2+r1+r2 = {total}")));
    }
    let m = p1.m as usize;
    let out = ParamRecord {
        n: 2 * p1.n,
        p: p1.p,
        m: p1.m,
        k_exp: (total - r) * m,
        r_exp: r * m,
        d: Some(d1.min(2 * d2)),
        d_at_least: true,
        pure: Some(true),
        linear: p1.m == 1,
        provenance: Vec::new(),
    };
    let claims = vec![
        Claim::asserted(format!("d ≥ min{{d1, 2·d2}} = {}", d1.min(2 * d2))),
        Claim::asserted("pure"),
        Claim::asserted("assumption: Q2 ⊆ Q1"),
    ];
    let mut res = params_result("combine_nested", vec![p1, p2], out, claims)?;
    if let RuleOutput::Params(p) = &mut res.output {
        p.provenance.push("assumed Q2 ⊆ Q1".into());
    }
    Ok(res)
}

/// C = {(u|v) : u + βv ∈ X} for a Hermitian self-orthogonal X over F_{q^2}.
pub fn hermitian_to_symplectic(x: &ClassicalCode, tower: &Tower) -> Result<AdditiveCode> {
    if **x.field() != **tower.ext() {
        return Err(Error::FieldMismatch);
    }
    if !x.is_hermitian_self_orthogonal()? {
        return Err(Error::NotSelfOrthogonal);
    }
    codes::expand_basis(x, tower)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassicalOp {
    Puncture(usize),
    ExtendParity,
}

pub fn classical_modify(x: &ClassicalCode, op: ClassicalOp) -> Result<ClassicalCode> {
    match op {
        ClassicalOp::Puncture(i) => x.puncture(i),
        ClassicalOp::ExtendParity => Ok(x.extend_parity()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shorten_examples() {
        let p: ParamRecord = "((5,2,1,3))_2 pure".parse().unwrap();
        let out = shorten_length(&p).unwrap().params();
        assert_eq!(out.dims_string(), "((4,4,1,2))_2");
        assert_eq!(out.to_string(), "[[4,2,0,2]]_2 pure");
        let impure: ParamRecord = "[[9,1,4,3]]_2 impure".parse().unwrap();
        assert!(matches!(shorten_length(&impure), Err(Error::PurityRequired(_))));
        let low: ParamRecord = "[[5,1,0,1]]_2 pure".parse().unwrap();
        assert!(matches!(shorten_length(&low), Err(Error::Precondition(_))));
    }

    #[test]
    fn combine_disjoint_examples() {
        let a: ParamRecord = "[[5,1,0,3]]_2 pure".parse().unwrap();
        let b: ParamRecord = "[[4,2,0,2]]_2 pure".parse().unwrap();
        let out = combine_disjoint(&a, &b, 0).unwrap().params();
        assert_eq!(out.to_string(), "[[7,1,0,≥3]]_2");
        assert_eq!(out.pure, None);
        let q3: ParamRecord = "[[5,1,0,3]]_3 pure".parse().unwrap();
        assert!(combine_disjoint(&q3, &b, 0).is_err());
        let wide: ParamRecord = "[[6,6,0,1]]_2 pure".parse().unwrap();
        assert!(matches!(combine_disjoint(&a, &wide, 0), Err(Error::Precondition(_))));
        assert!(matches!(combine_disjoint(&a, &b, 1), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn combine_nested_examples() {
        let a: ParamRecord = "[[5,1,0,3]]_2 pure".parse().unwrap();
        let out = combine_nested(&a, &a, 0, true).unwrap().params();
        assert_eq!(out.to_string(), "[[10,2,0,≥3]]_2 pure");
        let edge = combine_nested(&a, &a, 2, true).unwrap().params();
        assert_eq!(edge.k_integral(), Some(0));
        let b: ParamRecord = "[[4,2,0,2]]_2 pure".parse().unwrap();
        assert!(combine_nested(&a, &b, 0, true).is_err());
        assert!(combine_nested(&a, &a, 0, false).is_err());
        assert!(matches!(combine_nested(&a, &a, 3, true), Err(Error::OutOfRange(_))));
    }
}

//! Subsystem codes from additive codes.
//!
//! For `C ⊆ F_q^{2n}` with radical `D = C ∩ C^⊥s` the subsystem code has
//! `K = q^n / sqrt(|C||D|)`, `R = sqrt(|C|/|D|)` and distance
//! `swt(D^⊥s \ C)`, or `swt(D^⊥s)` when `D^⊥s = C`. K and R are kept as
//! base-p exponents.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::bounds::{self, BoundReport};
use crate::codes::{self, AdditiveCode, CosetMode, SympVector, WeightMethod};
use crate::config::{AnalysisConfig, DistanceMode};
use crate::error::{Error, Result};
use crate::gf::poly::prime_factors;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DistanceCase {
    /// D^⊥s ≠ C: distance taken over D^⊥s \ C
    A,
    /// D^⊥s = C: distance is swt(D^⊥s)
    B,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Distance {
    pub value: usize,
    pub method: WeightMethod,
    pub case: DistanceCase,
    /// exact mode fell back to a witness search above the threshold
    pub downgraded: bool,
    #[serde(skip)]
    pub witness: Option<SympVector>,
}

impl Distance {
    pub fn is_exact(&self) -> bool {
        self.method.is_exact()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Exact,
    AtLeast,
    AtMost,
}

/// What is known about swt(C).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WeightBound {
    pub value: usize,
    pub kind: BoundKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Purity {
    Pure,
    /// only purity to this weight is established
    PureTo(usize),
    Impure {
        swt_c: usize,
    },
    Unknown,
}

impl Purity {
    pub fn is_pure(self) -> bool {
        self == Purity::Pure
    }

    pub fn label(self) -> String {
        match self {
            Purity::Pure => "pure".into(),
            Purity::PureTo(d) => format!("pure to {d}"),
            Purity::Impure { swt_c } => format!("impure (swt(C) = {swt_c})"),
            Purity::Unknown => "unknown".into(),
        }
    }
}

impl Serialize for Purity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            status: &'static str,
            #[serde(skip_serializing_if = "Option::is_none")]
            pure_to: Option<usize>,
            #[serde(skip_serializing_if = "Option::is_none")]
            swt_c: Option<usize>,
        }
        let r = match *self {
            Purity::Pure => Repr { status: "pure", pure_to: None, swt_c: None },
            Purity::PureTo(d) => Repr { status: "pure_to", pure_to: Some(d), swt_c: None },
            Purity::Impure { swt_c } => Repr { status: "impure", pure_to: None, swt_c: Some(swt_c) },
            Purity::Unknown => Repr { status: "unknown", pure_to: None, swt_c: None },
        };
        r.serialize(s)
    }
}

#[derive(Debug, Clone)]
pub struct SubsystemCode {
    c: AdditiveCode,
    radical: AdditiveCode,
    radical_dual: AdditiveCode,
    k_exp: usize,
    r_exp: usize,
    distance: Option<Distance>,
    swt_c: Option<WeightBound>,
    purity: Purity,
    /// proven lower bound on swt(D^⊥s)
    radical_dual_bound: Option<usize>,
}

impl SubsystemCode {
    /// Subsystem parameters of `c`, with distance per `cfg.distance`.
    pub fn derive(c: &AdditiveCode, cfg: &AnalysisConfig) -> Result<SubsystemCode> {
        Self::derive_with_bound(c, cfg, None)
    }

    /// As [`derive`](Self::derive), given a proven lower bound on swt(D^⊥s).
    /// A witness meeting the bound makes the distance exact.
    pub(crate) fn derive_with_bound(
        c: &AdditiveCode,
        cfg: &AnalysisConfig,
        lower: Option<usize>,
    ) -> Result<SubsystemCode> {
        if c.is_zero() {
            return Err(Error::ZeroCode);
        }
        let radical = c.intersect(&c.dual_symp())?;
        let radical_dual = radical.dual_symp();
        let nm = c.n() * c.field().m() as usize;
        let (ec, ed) = (c.log_p_size(), radical.log_p_size());
        if (ec + ed) % 2 != 0 || ec + ed > 2 * nm {
            return Err(Error::Construction(format!("inconsistent sizes p^{ec}, p^{ed}")));
        }
        let mut code = SubsystemCode {
            k_exp: nm - (ec + ed) / 2,
            r_exp: (ec - ed) / 2,
            c: c.clone(),
            radical,
            radical_dual,
            distance: None,
            swt_c: None,
            purity: Purity::Unknown,
            radical_dual_bound: lower,
        };
        code.distance = code.compute_distance(cfg, lower)?;
        code.swt_c = code.compute_swt_c(cfg, lower);
        code.purity = code.classify();
        if code.k_exp == 0 {
            if let (Purity::Impure { swt_c }, Some(d)) = (code.purity, &code.distance) {
                return Err(Error::ImpureTrivialSubsystem { swt_c, d: d.value });
            }
        }
        Ok(code)
    }

    pub fn case(&self) -> DistanceCase {
        if self.radical_dual == self.c {
            DistanceCase::B
        } else {
            DistanceCase::A
        }
    }

    fn excluded(&self) -> Result<AdditiveCode> {
        match self.case() {
            DistanceCase::B => AdditiveCode::zero(self.c.field(), self.c.n(), self.c.coeff_degree()),
            DistanceCase::A => Ok(self.c.clone()),
        }
    }

    fn compute_distance(&self, cfg: &AnalysisConfig, lower: Option<usize>) -> Result<Option<Distance>> {
        let case = self.case();
        let excluded = self.excluded()?;
        let p = self.c.field().p();
        let size = codes::enumerate::pow_sat(p, self.radical_dual.log_p_size());
        let (mode, downgraded) = match cfg.distance {
            DistanceMode::Skip => return Ok(None),
            DistanceMode::Exact if size <= cfg.threshold => (CosetMode::Exact, false),
            DistanceMode::Exact => (CosetMode::Witness(lower.unwrap_or(1)), true),
            DistanceMode::Witness => (CosetMode::Witness(lower.unwrap_or(1)), false),
        };
        let res = codes::min_swt_coset(&self.radical_dual, &excluded, mode, cfg)?;
        let mut method = res.method;
        if let Some(w) = &res.witness {
            if !self.radical_dual.contains(w) || excluded.contains(w) || w.swt() != res.value {
                return Err(Error::Construction("distance witness failed verification".into()));
            }
        }
        if method == WeightMethod::Witness && lower == Some(res.value) {
            method = WeightMethod::Analytic;
        }
        if let Some(l) = lower {
            if res.value < l {
                return Err(Error::ClaimViolated(format!(
                    "witness of weight {} below the proven bound {l}",
                    res.value
                )));
            }
        }
        Ok(Some(Distance { value: res.value, method, case, downgraded, witness: res.witness }))
    }

    fn compute_swt_c(&self, cfg: &AnalysisConfig, lower: Option<usize>) -> Option<WeightBound> {
        if cfg.distance == DistanceMode::Skip {
            return None;
        }
        let p = self.c.field().p();
        if codes::enumerate::pow_sat(p, self.c.log_p_size()) <= cfg.threshold && cfg.distance == DistanceMode::Exact {
            let v = codes::min_swt(&self.c, cfg).ok()?;
            return Some(WeightBound { value: v, kind: BoundKind::Exact });
        }
        // C ⊆ D^⊥s, so a bound on swt(D^⊥s) bounds swt(C)
        if let Some(l) = lower {
            return Some(WeightBound { value: l, kind: BoundKind::AtLeast });
        }
        let d = self.distance.as_ref().map_or(1, |d| d.value);
        let stop = d.saturating_sub(1).max(1);
        codes::swt_witness(&self.c, stop, cfg).map(|v| WeightBound { value: v, kind: BoundKind::AtMost })
    }

    fn classify(&self) -> Purity {
        let Some(dist) = &self.distance else {
            return Purity::Unknown;
        };
        let Some(w) = self.swt_c else {
            return Purity::Unknown;
        };
        let d = dist.value;
        match w.kind {
            BoundKind::Exact if dist.is_exact() => {
                if w.value >= d {
                    Purity::Pure
                } else {
                    Purity::Impure { swt_c: w.value }
                }
            }
            BoundKind::Exact | BoundKind::AtLeast => {
                // d may only be an upper bound here
                if dist.is_exact() && w.value >= d {
                    Purity::Pure
                } else {
                    Purity::PureTo(w.value)
                }
            }
            BoundKind::AtMost if dist.is_exact() && w.value < d => Purity::Impure { swt_c: w.value },
            BoundKind::AtMost => Purity::Unknown,
        }
    }

    pub fn code(&self) -> &AdditiveCode {
        &self.c
    }

    pub fn radical(&self) -> &AdditiveCode {
        &self.radical
    }

    pub fn radical_dual(&self) -> &AdditiveCode {
        &self.radical_dual
    }

    pub fn n(&self) -> usize {
        self.c.n()
    }

    pub fn p(&self) -> u32 {
        self.c.field().p()
    }

    pub fn m(&self) -> u32 {
        self.c.field().m()
    }

    pub fn q(&self) -> u32 {
        self.c.field().order()
    }

    /// log_p K
    pub fn k_exp(&self) -> usize {
        self.k_exp
    }

    /// log_p R
    pub fn r_exp(&self) -> usize {
        self.r_exp
    }

    pub fn distance(&self) -> Option<&Distance> {
        self.distance.as_ref()
    }

    pub fn swt_c(&self) -> Option<WeightBound> {
        self.swt_c
    }

    pub fn purity(&self) -> Purity {
        self.purity
    }

    pub fn is_linear(&self) -> bool {
        self.c.is_fq_linear()
    }

    pub fn radical_dual_bound(&self) -> Option<usize> {
        self.radical_dual_bound
    }

    /// Whether swt(C) ≥ d'.
    pub fn is_pure_to(&self, d_prime: usize, cfg: &AnalysisConfig) -> Result<bool> {
        if d_prime <= 1 {
            return Ok(true);
        }
        if let Some(w) = self.swt_c {
            match w.kind {
                BoundKind::Exact => return Ok(w.value >= d_prime),
                BoundKind::AtLeast if w.value >= d_prime => return Ok(true),
                BoundKind::AtMost if w.value < d_prime => return Ok(false),
                _ => {}
            }
        }
        match codes::min_swt(&self.c, cfg) {
            Ok(v) => Ok(v >= d_prime),
            Err(Error::ThresholdExceeded { .. }) => {
                if let Some(v) = codes::swt_witness(&self.c, d_prime - 1, cfg) {
                    if v < d_prime {
                        return Ok(false);
                    }
                }
                Err(Error::PurityUnknown(format!("swt(C) is beyond the enumeration threshold (need ≥ {d_prime})")))
            }
            Err(e) => Err(e),
        }
    }

    /// ((n,K,R,d))_q with k, r as log_q.
    pub fn params(&self) -> ParamRecord {
        let (d, at_least) = match &self.distance {
            Some(d) => (Some(d.value), false),
            None => (None, false),
        };
        ParamRecord {
            n: self.n(),
            p: self.p(),
            m: self.m(),
            k_exp: self.k_exp,
            r_exp: self.r_exp,
            d,
            d_at_least: at_least,
            pure: match self.purity {
                Purity::Pure => Some(true),
                Purity::Impure { .. } => Some(false),
                _ => None,
            },
            linear: self.is_linear(),
            provenance: Vec::new(),
        }
    }

    pub fn report(&self) -> AnalysisReport {
        let params = self.params();
        AnalysisReport {
            params: params.dims_string(),
            bracket: params.to_string(),
            n: self.n(),
            q: self.q(),
            k: params.k_string(),
            r: params.r_string(),
            k_exp_p: self.k_exp,
            r_exp_p: self.r_exp,
            stabilizer: self.r_exp == 0,
            linear: params.linear,
            purity: self.purity,
            swt_c: self.swt_c,
            distance: self.distance.clone(),
            log_p_size_c: self.c.log_p_size(),
            log_p_size_d: self.radical.log_p_size(),
            singleton: params.d.map(|_| bounds::singleton_check(&params)),
            hamming: params.d.and_then(|_| bounds::hamming_check(&params).ok()),
        }
    }
}

/// Parameters of a subsystem code.
pub fn bracket_params(code: &SubsystemCode) -> ParamRecord {
    code.params()
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub params: String,
    pub bracket: String,
    pub n: usize,
    pub q: u32,
    pub k: String,
    pub r: String,
    pub k_exp_p: usize,
    pub r_exp_p: usize,
    pub stabilizer: bool,
    pub linear: bool,
    pub purity: Purity,
    pub swt_c: Option<WeightBound>,
    pub distance: Option<Distance>,
    pub log_p_size_c: usize,
    pub log_p_size_d: usize,
    pub singleton: Option<BoundReport>,
    pub hamming: Option<BoundReport>,
}

/// An abstract ((n,K,R,d))_q tuple; K and R are powers of p kept as exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamRecord {
    pub n: usize,
    pub p: u32,
    pub m: u32,
    pub k_exp: usize,
    pub r_exp: usize,
    pub d: Option<usize>,
    /// d is only a lower bound
    pub d_at_least: bool,
    /// None when purity is not asserted either way
    pub pure: Option<bool>,
    pub linear: bool,
    pub provenance: Vec<String>,
}

fn ratio_string(num: usize, den: u32) -> String {
    let den = den as usize;
    let g = gcd(num, den);
    if num.is_multiple_of(den) {
        (num / den).to_string()
    } else {
        format!("{}/{}", num / g, den / g)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn power_string(p: u32, e: usize) -> String {
    let v = BigUint::from(p).pow(e as u32);
    if v < BigUint::from(1000u32) {
        v.to_string()
    } else {
        format!("{p}^{e}")
    }
}

/// Splits q = p^m.
pub fn prime_power(q: u64) -> Result<(u32, u32)> {
    let f = prime_factors(q);
    if q < 2 || f.len() != 1 {
        return Err(Error::Parse(format!("{q} is not a prime power")));
    }
    let p = f[0];
    let mut m = 0;
    let mut rest = q;
    while rest > 1 {
        rest /= p;
        m += 1;
    }
    Ok((p as u32, m))
}

impl ParamRecord {
    /// [[n,k,r,d]]_q with integral k and r.
    pub fn bracket(n: usize, q: u32, k: usize, r: usize, d: usize) -> Result<Self> {
        let (p, m) = prime_power(q as u64)?;
        let rec = ParamRecord {
            n,
            p,
            m,
            k_exp: k * m as usize,
            r_exp: r * m as usize,
            d: Some(d),
            d_at_least: false,
            pure: None,
            linear: m == 1,
            provenance: Vec::new(),
        };
        rec.check()?;
        Ok(rec)
    }

    pub fn with_pure(mut self, pure: Option<bool>) -> Self {
        self.pure = pure;
        self
    }

    pub fn with_linear(mut self, linear: bool) -> Self {
        self.linear = linear;
        self
    }

    pub fn check(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::OutOfRange("n must be at least 1".into()));
        }
        if self.d == Some(0) {
            return Err(Error::OutOfRange("d must be at least 1".into()));
        }
        if self.k_exp + self.r_exp > self.n * self.m as usize {
            return Err(Error::OutOfRange("K·R exceeds q^n".into()));
        }
        Ok(())
    }

    pub fn q(&self) -> u32 {
        self.p.pow(self.m)
    }

    pub fn k_integral(&self) -> Option<usize> {
        self.k_exp.is_multiple_of(self.m as usize).then(|| self.k_exp / self.m as usize)
    }

    pub fn r_integral(&self) -> Option<usize> {
        self.r_exp.is_multiple_of(self.m as usize).then(|| self.r_exp / self.m as usize)
    }

    pub fn k_string(&self) -> String {
        ratio_string(self.k_exp, self.m)
    }

    pub fn r_string(&self) -> String {
        ratio_string(self.r_exp, self.m)
    }

    pub fn is_stabilizer(&self) -> bool {
        self.r_exp == 0
    }

    fn d_string(&self) -> String {
        match self.d {
            Some(d) if self.d_at_least => format!("≥{d}"),
            Some(d) => d.to_string(),
            None => "?".into(),
        }
    }

    /// ((n,K,R,d))_q
    pub fn dims_string(&self) -> String {
        format!(
            "(({},{},{},{}))_{}",
            self.n,
            power_string(self.p, self.k_exp),
            power_string(self.p, self.r_exp),
            self.d_string(),
            self.q()
        )
    }
}

impl fmt::Display for ParamRecord {
    /// [[n,k,r,d]]_q, followed by "pure"/"impure" when known.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{},{},{}]]_{}", self.n, self.k_string(), self.r_string(), self.d_string(), self.q())?;
        match self.pure {
            Some(true) => write!(f, " pure"),
            Some(false) => write!(f, " impure"),
            None => Ok(()),
        }
    }
}

impl Serialize for ParamRecord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            bracket: String,
            params: String,
            n: usize,
            q: u32,
            k: String,
            r: String,
            d: Option<usize>,
            d_at_least: bool,
            pure: Option<bool>,
            linear: bool,
            provenance: &'a [String],
        }
        Repr {
            bracket: self.to_string(),
            params: self.dims_string(),
            n: self.n,
            q: self.q(),
            k: self.k_string(),
            r: self.r_string(),
            d: self.d,
            d_at_least: self.d_at_least,
            pure: self.pure,
            linear: self.linear,
            provenance: &self.provenance,
        }
        .serialize(s)
    }
}

fn parse_exp(tok: &str, p: u32, m: u32, dims: bool) -> Result<usize> {
    let tok = tok.trim();
    let bad = || Error::Parse(format!("cannot read dimension '{tok}'"));
    if !dims {
        // log_q form: an integer, or a fraction a/m
        if let Some((a, b)) = tok.split_once('/') {
            let a: usize = a.trim().parse().map_err(|_| bad())?;
            let b: usize = b.trim().parse().map_err(|_| bad())?;
            if b == 0 || !(a * m as usize).is_multiple_of(b) {
                return Err(Error::NonIntegral(format!("{tok} is not a base-{p} exponent")));
            }
            return Ok(a * m as usize / b);
        }
        let k: usize = tok.parse().map_err(|_| bad())?;
        return Ok(k * m as usize);
    }
    let value = if let Some((b, e)) = tok.split_once('^') {
        let b: BigUint = b.trim().parse().map_err(|_| bad())?;
        let e: u32 = e.trim().parse().map_err(|_| bad())?;
        b.pow(e)
    } else {
        tok.parse::<BigUint>().map_err(|_| bad())?
    };
    let zero = BigUint::from(0u32);
    if value == zero {
        return Err(bad());
    }
    let pb = BigUint::from(p);
    let mut rest = value;
    let mut e = 0;
    while rest > BigUint::from(1u32) {
        if &rest % &pb != zero {
            return Err(Error::NonIntegral(format!("{tok} is not a power of {p}")));
        }
        rest /= &pb;
        e += 1;
    }
    Ok(e)
}

impl FromStr for ParamRecord {
    type Err = Error;

    /// Accepts `[[n,k,r,d]]_q` or `((n,K,R,d))_q`, optional `≥`/`>=` before d,
    /// followed by optional words `pure`, `impure`, `linear`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |msg: &str| Error::Parse(format!("{msg}: '{s}'"));
        let (dims, open, close) = if s.starts_with("[[") {
            (false, "[[", "]]")
        } else if s.starts_with("((") {
            (true, "((", "))")
        } else {
            return Err(bad("expected [[n,k,r,d]]_q or ((n,K,R,d))_q"));
        };
        let end = s.find(close).ok_or_else(|| bad("unterminated tuple"))?;
        let inner = &s[open.len()..end];
        let rest = &s[end + close.len()..];
        let rest = rest.strip_prefix('_').ok_or_else(|| bad("missing _q"))?;
        let mut words = rest.split_whitespace();
        let q: u64 = words.next().ok_or_else(|| bad("missing q"))?.parse().map_err(|_| bad("bad q"))?;
        let (p, m) = prime_power(q)?;
        let mut pure = None;
        let mut linear = m == 1;
        for w in words {
            match w {
                "pure" => pure = Some(true),
                "impure" => pure = Some(false),
                "linear" => linear = true,
                _ => return Err(bad("unknown flag")),
            }
        }
        let parts: Vec<&str> = inner.split(',').collect();
        if parts.len() != 4 {
            return Err(bad("expected four entries"));
        }
        let n: usize = parts[0].trim().parse().map_err(|_| bad("bad n"))?;
        let k_exp = parse_exp(parts[1], p, m, dims)?;
        let r_exp = parse_exp(parts[2], p, m, dims)?;
        let dtok = parts[3].trim();
        let (dtok, at_least) = if let Some(t) = dtok.strip_prefix(">=") {
            (t, true)
        } else if let Some(t) = dtok.strip_prefix('≥') {
            (t, true)
        } else {
            (dtok, false)
        };
        let d: usize = dtok.trim().parse().map_err(|_| bad("bad d"))?;
        let rec = ParamRecord {
            n,
            p,
            m,
            k_exp,
            r_exp,
            d: Some(d),
            d_at_least: at_least,
            pure,
            linear,
            provenance: Vec::new(),
        };
        rec.check()?;
        Ok(rec)
    }
}

//! End-to-end analysis of one family and its JSON report.

use std::time::{Duration, Instant};

use serde_json::{json, Map, Value};

use crate::certs::{self, CertificateFamily};
use crate::error::{Error, Result};
use crate::rootsys::{positive_roots, Family, FamilyRank, RootSystem};
use crate::sigsum::{
    self, CountKind, CountResult, Method, MitmOptions, Obstruction, DEFAULT_BRUTE_LIMIT,
    DEFAULT_MEMORY_BUDGET, DEFAULT_MITM_LIMIT,
};
use crate::spinor;

/// Up to this many roots `auto` uses brute force; above it meet-in-the-middle.
pub const AUTO_BRUTE_MAX: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MethodChoice {
    #[default]
    Auto,
    Brute,
    Mitm,
}

impl std::str::FromStr for MethodChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<MethodChoice> {
        match s {
            "auto" => Ok(MethodChoice::Auto),
            "brute" => Ok(MethodChoice::Brute),
            "mitm" => Ok(MethodChoice::Mitm),
            other => Err(Error::InvalidInput(format!("unknown method `{other}`"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CountOptions {
    pub method: MethodChoice,
    /// Exact counting is attempted only when `r <= max_r`.
    pub max_r: usize,
    pub brute_limit: usize,
    pub memory_budget: u64,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            method: MethodChoice::Auto,
            max_r: DEFAULT_MITM_LIMIT,
            brute_limit: DEFAULT_BRUTE_LIMIT,
            memory_budget: DEFAULT_MEMORY_BUDGET,
        }
    }
}

/// Runs the selected counter, honouring the limits in `opts`.
pub fn count(system: &RootSystem, opts: &CountOptions) -> Result<CountResult> {
    let r = system.len();
    if r > opts.max_r {
        return Err(Error::ResourceLimit(format!(
            "r = {r} exceeds max-r = {}",
            opts.max_r
        )));
    }
    let brute = match opts.method {
        MethodChoice::Brute => true,
        MethodChoice::Mitm => false,
        MethodChoice::Auto => r <= AUTO_BRUTE_MAX,
    };
    if brute {
        sigsum::count_bruteforce(system, opts.brute_limit.min(opts.max_r))
    } else {
        sigsum::count_mitm_with(
            system,
            &MitmOptions {
                limit_r: opts.max_r,
                memory_budget: opts.memory_budget,
                force_generic_keys: false,
            },
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportCount {
    Exact(u128),
    LowerBound(u128),
    Zero,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Timings {
    pub obstruction: Duration,
    pub certificate: Duration,
    pub count: Duration,
    pub total: Duration,
}

#[derive(Debug, Clone)]
pub struct AnalysisReport {
    pub id: FamilyRank,
    pub r: usize,
    pub ambient_dim: usize,
    pub denominator: i64,
    pub exists: bool,
    pub obstruction: Obstruction,
    pub count: ReportCount,
    pub method: Method,
    pub certificate: Option<CertificateFamily>,
    pub timings: Timings,
    /// Set when exact counting was requested explicitly but hit a limit; the
    /// report then carries existence and the known bound only.
    pub resource_limited: Option<String>,
}

/// Obstruction, then certificate, then counting when `r <= max_r`.
///
/// Inconsistencies between the three stages are internal errors, never
/// reconciled.
pub fn analyze(id: FamilyRank, opts: &CountOptions) -> Result<AnalysisReport> {
    let started = Instant::now();
    let system = positive_roots(id);
    let mut timings = Timings::default();

    let t = Instant::now();
    let obstruction = sigsum::obstruction_2l(&system);
    timings.obstruction = t.elapsed();

    let t = Instant::now();
    let certificate = certs::certificate(id)?;
    if let Some(cert) = &certificate {
        cert.verify(&system)
            .map_err(|e| Error::Invariant(format!("{id} certificate: {e}")))?;
    }
    timings.certificate = t.elapsed();

    let exists = match (&obstruction, &certificate) {
        (Obstruction::Fail(reason), Some(_)) => {
            return Err(Error::Invariant(format!(
                "{id}: certificate verifies but obstruction fails ({reason})"
            )))
        }
        (Obstruction::Fail(_), None) => false,
        (Obstruction::Pass, Some(_)) => true,
        (Obstruction::Pass, None) => {
            return Err(Error::Invariant(format!(
                "{id}: obstruction passes but no certificate is known"
            )))
        }
    };

    let mut report = AnalysisReport {
        id,
        r: system.len(),
        ambient_dim: system.ambient_dim(),
        denominator: system.denominator(),
        exists,
        obstruction,
        count: ReportCount::Zero,
        method: Method::Obstruction,
        certificate,
        timings,
        resource_limited: None,
    };

    if exists {
        let bound = certs::lower_bound(id)?;
        report.count = ReportCount::LowerBound(bound);
        report.method = Method::Certificate;
        let explicit = opts.method != MethodChoice::Auto;
        if system.len() <= opts.max_r || explicit {
            let t = Instant::now();
            match count(&system, opts) {
                Ok(result) => {
                    check_count(id, &result, bound)?;
                    report.count = ReportCount::Exact(result.value);
                    report.method = result.method;
                }
                Err(Error::ResourceLimit(msg)) => report.resource_limited = Some(msg),
                Err(e) => return Err(e),
            }
            report.timings.count = t.elapsed();
        }
    }
    report.timings.total = started.elapsed();
    Ok(report)
}

fn check_count(id: FamilyRank, result: &CountResult, bound: u128) -> Result<()> {
    if !result.value.is_multiple_of(2) {
        return Err(Error::Invariant(format!(
            "{id}: odd count {}",
            result.value
        )));
    }
    if result.kind != CountKind::Exact || result.value == 0 {
        return Err(Error::Invariant(format!(
            "{id}: certificate exists but the count is zero"
        )));
    }
    if result.value < bound {
        return Err(Error::Invariant(format!(
            "{id}: count {} is below the bound {bound}",
            result.value
        )));
    }
    Ok(())
}

/// Families and ranks covered by the results table.
pub fn table_ids() -> Vec<FamilyRank> {
    let mut ids = Vec::new();
    let mut push = |f: Family, ranks: std::ops::RangeInclusive<usize>| {
        for n in ranks {
            ids.push(FamilyRank::new(f, n).expect("table ids are admissible"));
        }
    };
    push(Family::A, 1..=8);
    push(Family::B, 2..=6);
    push(Family::C, 3..=8);
    push(Family::D, 4..=8);
    push(Family::E, 6..=8);
    push(Family::F, 4..=4);
    push(Family::G, 2..=2);
    ids
}

/// JSON number for values that fit in `u64`, decimal string otherwise.
pub fn number(v: u128) -> Value {
    match u64::try_from(v) {
        Ok(small) => json!(small),
        Err(_) => json!(v.to_string()),
    }
}

pub fn certificate_json(cert: &CertificateFamily) -> Value {
    json!({
        "blocks": cert.blocks(),
        "lower_bound": number(cert.lower_bound()),
        "witness": cert.witness().signs(),
    })
}

fn micros(d: Duration) -> Value {
    json!(d.as_micros() as u64)
}

impl AnalysisReport {
    pub fn to_json(&self) -> Value {
        let count = match self.count {
            ReportCount::Exact(v) => json!({ "exact": number(v) }),
            ReportCount::LowerBound(v) => json!({ "lower_bound": number(v) }),
            ReportCount::Zero => json!({ "zero": true }),
        };
        let mut map = Map::new();
        map.insert("family".into(), json!(self.id.family().to_string()));
        map.insert("rank".into(), json!(self.id.rank()));
        map.insert("r".into(), json!(self.r));
        map.insert("ambient_dim".into(), json!(self.ambient_dim));
        map.insert("denominator".into(), json!(self.denominator));
        map.insert("exists".into(), json!(self.exists));
        map.insert(
            "obstruction".into(),
            json!(if self.obstruction.passes() {
                "pass"
            } else {
                "fail"
            }),
        );
        map.insert("count".into(), count);
        map.insert("method".into(), json!(self.method.to_string()));
        map.insert(
            "certificate".into(),
            self.certificate
                .as_ref()
                .map_or(Value::Null, certificate_json),
        );
        map.insert(
            "timings".into(),
            json!({
                "obstruction_us": micros(self.timings.obstruction),
                "certificate_us": micros(self.timings.certificate),
                "count_us": micros(self.timings.count),
                "total_us": micros(self.timings.total),
            }),
        );
        Value::Object(map)
    }

    /// One human-readable line.
    pub fn summary_line(&self) -> String {
        let count = match self.count {
            ReportCount::Exact(v) => format!("exactly {v}"),
            ReportCount::LowerBound(v) => format!("at least {v}"),
            ReportCount::Zero => "0".to_string(),
        };
        format!(
            "{:<4} r={:<4} exists={:<3} obstruction={:<4} dim={} [{}]",
            self.id.to_string(),
            self.r,
            if self.exists { "yes" } else { "no" },
            if self.obstruction.passes() {
                "pass"
            } else {
                "fail"
            },
            count,
            self.method
        )
    }
}

pub fn count_json(system: &RootSystem, result: &CountResult) -> Value {
    json!({
        "family": system.id().family().to_string(),
        "rank": system.id().rank(),
        "r": system.len(),
        "kind": result.kind,
        "value": number(result.value),
        "method": result.method.to_string(),
        "memory_peak": result.memory_peak,
        "timings": { "elapsed_us": micros(result.elapsed) },
    })
}

pub fn certify_json(id: FamilyRank) -> Result<Value> {
    let Some(cert) = certs::certificate(id)? else {
        return Ok(json!({
            "available": false,
            "family": id.family().to_string(),
            "rank": id.rank(),
        }));
    };
    let system = positive_roots(id);
    cert.verify(&system)
        .map_err(|e| Error::Invariant(format!("{id} certificate: {e}")))?;
    let mut value = certificate_json(&cert);
    let map = value.as_object_mut().expect("object");
    map.insert("available".into(), json!(true));
    map.insert("verified".into(), json!(true));
    map.insert("family".into(), json!(id.family().to_string()));
    map.insert("rank".into(), json!(id.rank()));
    map.insert("r".into(), json!(system.len()));
    Ok(value)
}

pub fn oracle_json(id: FamilyRank, max_r: usize) -> Result<Value> {
    let system = positive_roots(id);
    let started = Instant::now();
    let dimension = spinor::invariant_dimension(&system, max_r)?;
    Ok(json!({
        "family": id.family().to_string(),
        "rank": id.rank(),
        "r": system.len(),
        "dimension": number(dimension),
        "timings": { "elapsed_us": micros(started.elapsed()) },
    }))
}

/// Drops the `timings` block of a report, or of every report in an array.
pub fn without_timings(value: Value) -> Value {
    match value {
        Value::Object(mut map) => {
            map.remove("timings");
            Value::Object(map)
        }
        Value::Array(rows) => Value::Array(rows.into_iter().map(without_timings).collect()),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(f: Family, n: usize) -> FamilyRank {
        FamilyRank::new(f, n).unwrap()
    }

    #[test]
    fn g2_report() {
        let report = analyze(id(Family::G, 2), &CountOptions::default()).unwrap();
        assert!(report.exists);
        assert_eq!(report.count, ReportCount::Exact(4));
        assert_eq!(report.method, Method::BruteForce);
        let json = report.to_json();
        assert_eq!(json["count"]["exact"], 4);
        assert_eq!(json["obstruction"], "pass");
    }

    #[test]
    fn e7_report() {
        let report = analyze(id(Family::E, 7), &CountOptions::default()).unwrap();
        assert!(!report.exists);
        let json = report.to_json();
        assert_eq!(json["count"]["zero"], true);
        assert_eq!(json["obstruction"], "fail");
        assert!(json["certificate"].is_null());
    }

    #[test]
    fn e8_reports_bound() {
        let report = analyze(id(Family::E, 8), &CountOptions::default()).unwrap();
        assert!(report.exists);
        assert_eq!(report.count, ReportCount::LowerBound(369_600));
        assert!(report.resource_limited.is_none());
    }

    #[test]
    fn explicit_method_over_limit_is_flagged() {
        let opts = CountOptions {
            method: MethodChoice::Brute,
            ..CountOptions::default()
        };
        let report = analyze(id(Family::E, 6), &opts).unwrap();
        assert!(report.resource_limited.is_some());
        assert_eq!(report.count, ReportCount::LowerBound(13_697_920));
    }

    #[test]
    fn table_ids_cover_every_family() {
        let ids = table_ids();
        assert_eq!(ids.len(), 8 + 5 + 6 + 5 + 3 + 1 + 1);
    }

    #[test]
    fn method_parse() {
        assert_eq!("mitm".parse::<MethodChoice>().unwrap(), MethodChoice::Mitm);
        assert!("fast".parse::<MethodChoice>().is_err());
    }
}

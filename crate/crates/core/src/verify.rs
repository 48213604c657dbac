//! Cross-checks of one weight through every independent route.

use serde::Serialize;

use crate::codes::{code_to_theta, enumerate_codes, theta_to_code};
use crate::diagrams::strip_labeling;
use crate::error::Result;
use crate::factors::{brundan_witness, composition_factors, default_margin, primitive_set_oracle, theta_prime_for};
use crate::nqc::NqcTable;
use crate::operators::raise_theta;
use crate::theta::{count_theta, enumerate_direct, enumerate_recursive};
use crate::weights::Weight;

/// Largest degree for which the brute-force oracle runs.
pub const ORACLE_LIMIT: usize = 3;
/// Largest degree for which codes are enumerated from scratch.
pub const CODE_ENUM_LIMIT: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, failures: Vec<String>, ok: String) -> Check {
    match failures.first() {
        None => Check { name, passed: true, detail: ok },
        Some(first) => Check { name, passed: false, detail: format!("{} failure(s), first: {first}", failures.len()) },
    }
}

/// Runs every consistency check on a dominant weight. The oracle uses
/// `margin`, defaulting to `r·(m+n)`, and is skipped above [`ORACLE_LIMIT`].
pub fn verify(lambda: &Weight, margin: Option<i64>) -> Result<Vec<Check>> {
    let table = NqcTable::new(lambda)?;
    let r = table.r;
    let direct = enumerate_direct(&table);
    let fs = composition_factors(lambda)?;
    let mut out = Vec::new();

    let rec = enumerate_recursive(&table)?;
    let count = count_theta(&table);
    let mut bad = Vec::new();
    if rec != direct {
        bad.push(format!("recursive gives {} tuples, direct {}", rec.len(), direct.len()));
    }
    if count != direct.len() as u64 {
        bad.push(format!("count {count} vs {}", direct.len()));
    }
    out.push(check("index-set enumerators agree", bad, format!("{} tuples", direct.len())));

    let mut bad = Vec::new();
    for f in &fs.factors {
        if brundan_witness(lambda, &f.mu)?.is_none() {
            bad.push(format!("{} for {}", f.mu, f.theta));
        }
    }
    if fs.weights().len() != direct.len() {
        bad.push("factor weights are not distinct".into());
    }
    out.push(check("raising witness for every factor", bad, format!("{} factors", fs.len())));

    let mut bad = Vec::new();
    for f in &fs.factors {
        match theta_prime_for(lambda, &f.theta) {
            Ok(d) if raise_theta(&f.mu, &d.theta_prime)? == *lambda => {}
            Ok(d) => bad.push(format!("{} with {}", f.theta, d.theta_prime)),
            Err(e) => bad.push(format!("{}: {e}", f.theta)),
        }
    }
    out.push(check("constructed raising tuple round trip", bad, format!("{} tuples", fs.len())));

    let mut bad = Vec::new();
    for th in &direct {
        match theta_to_code(&table, th).and_then(|c| code_to_theta(&table, &c).map(|b| (c, b))) {
            Ok((_, back)) if back == *th => {}
            Ok((c, back)) => bad.push(format!("{th} -> {c} -> {back}")),
            Err(e) => bad.push(format!("{th}: {e}")),
        }
    }
    if r <= CODE_ENUM_LIMIT {
        let n = enumerate_codes(&table).len();
        if n != direct.len() {
            bad.push(format!("{n} codes vs {} tuples", direct.len()));
        }
    }
    out.push(check("code correspondence", bad, format!("{} codes", direct.len())));

    let mut bad = Vec::new();
    for th in &direct {
        if let Err(e) = strip_labeling(lambda, th) {
            bad.push(format!("{th}: {e}"));
        }
    }
    out.push(check("strip removal matches lowering", bad, "all stages are rim strips".into()));

    if r <= ORACLE_LIMIT {
        let margin = margin.unwrap_or_else(|| default_margin(lambda));
        let oracle = primitive_set_oracle(lambda, margin)?;
        let want = fs.weights();
        let bad: Vec<String> = oracle.symmetric_difference(&want).map(|w| w.to_string()).collect();
        out.push(check("brute-force oracle equals factor set", bad, format!("margin {margin}")));
    }
    Ok(out)
}

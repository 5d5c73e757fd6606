//! Self-check suite shared by the `verify` command: every cross-route
//! identity the engine relies on, at a configurable scale.

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::Ratio;

use crate::enumeration::{
    are_conjugate_oracle, brute_force_classes_guarded, enumerate_classes, ClassRecord, EnumerationParams,
};
use crate::error::Result;
use crate::sl2::{conjugate, word_to_matrix, Mat2};
use crate::statistics::{psi_values, DensityReport};
use crate::symbols::{
    dedekind_sum, dedekind_sum_naive, phi, phi_numeric_oracle, psi, psi_from_word, terms_for_accuracy,
};
use crate::winding::winding_psi;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub trace_bound: u64,
    pub oracle_guard: u64,
    pub worker_count: usize,
    pub n_samples: usize,
    pub n_terms: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { trace_bound: 20, oracle_guard: 20, worker_count: 1, n_samples: 64, n_terms: 30 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn outcome(name: &'static str, failures: Vec<String>, checked: usize) -> CheckOutcome {
    let passed = failures.is_empty();
    let detail = if passed {
        format!("{checked} checked")
    } else {
        format!("{} of {checked} failed; first: {}", failures.len(), failures[0])
    };
    CheckOutcome { name, passed, detail }
}

/// Fixed conjugators: short words in the generators and their inverses.
fn conjugators() -> Vec<Mat2<BigInt>> {
    let l = Mat2::<BigInt>::gen_l();
    let r = Mat2::<BigInt>::gen_r();
    let (li, ri) = (l.inverse(), r.inverse());
    let s = Mat2::<BigInt>::gen_s();
    vec![
        l.clone(),
        ri.clone(),
        s.clone(),
        &(&l * &ri) * &s,
        &(&li * &li) * &r,
        &(&(&s * &r) * &r) * &li,
        &(&(&ri * &l) * &s) * &(&ri * &ri),
    ]
}

fn check_oracle(cfg: &VerifyConfig) -> Result<CheckOutcome> {
    let top = cfg.trace_bound.min(cfg.oracle_guard);
    let mut failures = Vec::new();
    let mut checked = 0;
    for nu in 4..=top {
        let fast = enumerate_classes(&EnumerationParams::new(nu, cfg.worker_count)?)?;
        let slow = brute_force_classes_guarded(nu, cfg.oracle_guard)?;
        checked += 1;
        if fast != slow {
            failures.push(format!("nu = {nu}: {} vs {} classes", fast.len(), slow.len()));
        }
    }
    Ok(outcome("enumeration matches exhaustive oracle", failures, checked))
}

fn check_records(records: &[ClassRecord]) -> CheckOutcome {
    let failures = records
        .iter()
        .filter_map(|r| r.validate().err().map(|e| format!("{}: {e}", r.necklace)))
        .collect();
    outcome("class records valid", failures, records.len())
}

fn check_psi_routes(records: &[ClassRecord], psis: &[i64]) -> CheckOutcome {
    let failures = records
        .iter()
        .zip(psis)
        .filter(|(r, &p)| psi_from_word(&r.necklace) != p)
        .map(|(r, p)| format!("{}: Psi = {p}, #R - #L = {}", r.necklace, psi_from_word(&r.necklace)))
        .collect();
    outcome("Psi closed form equals #R - #L", failures, records.len())
}

fn check_psi_invariance(records: &[ClassRecord]) -> Result<CheckOutcome> {
    let conj = conjugators();
    let mut failures = Vec::new();
    let mut checked = 0;
    for r in records.iter().take(200) {
        let base = psi(&r.rep)?;
        if psi(&r.rep.neg())? != base {
            failures.push(format!("{}: Psi(-M) differs", r.necklace));
        }
        for p in &conj {
            checked += 1;
            let m = conjugate(&r.rep, p);
            if psi(&m)? != base {
                failures.push(format!("{}: conjugate by {p} gives different Psi", r.necklace));
            }
        }
    }
    Ok(outcome("Psi conjugacy and sign invariant", failures, checked))
}

fn check_mirror(psis: &[i64]) -> Result<CheckOutcome> {
    let mut failures = Vec::new();
    for m in 2..=7u64 {
        let rep = DensityReport::from_psi(0, m, psis.iter().copied())?;
        if !rep.mirror_symmetric() {
            failures.push(format!("mod {m}: counts {:?}", rep.counts));
        }
    }
    Ok(outcome("residues k and -k equally frequent", failures, 6))
}

fn check_numeric_oracle(records: &[ClassRecord]) -> Result<CheckOutcome> {
    let z = Complex::new(0.1, 2.0);
    let mut failures = Vec::new();
    let mut checked = 0;
    for r in records.iter().filter(|r| r.trace() < &BigInt::from(12)) {
        for m in [r.rep.clone(), r.rep.inverse(), conjugate(&r.rep, &Mat2::gen_s())] {
            let g = m.to_real::<f64>();
            let im = g.act(z).im.min(z.im);
            let n_terms = terms_for_accuracy(im, 1e-9);
            checked += 1;
            match phi_numeric_oracle(&m, z, n_terms) {
                Ok(v) if BigInt::from(v) == phi(&m)? => {}
                Ok(v) => failures.push(format!("{m}: oracle {v}, closed form {}", phi(&m)?)),
                Err(e) => failures.push(format!("{m}: {e}")),
            }
        }
    }
    Ok(outcome("Phi closed form matches transformation law", failures, checked))
}

fn check_winding(cfg: &VerifyConfig, records: &[ClassRecord], psis: &[i64]) -> CheckOutcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for (r, &p) in records.iter().zip(psis).filter(|(r, _)| r.trace() < &BigInt::from(30)) {
        checked += 1;
        match winding_psi(&r.rep, cfg.n_samples, cfg.n_terms) {
            Ok(w) if w == p => {}
            Ok(w) => failures.push(format!("{}: winding {w}, Psi {p}", r.necklace)),
            Err(e) => failures.push(format!("{}: {e}", r.necklace)),
        }
    }
    outcome("winding of Delta v^6 equals Psi", failures, checked)
}

fn check_dedekind() -> CheckOutcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for k in 1..60i64 {
        for h in 1..60i64 {
            if h.gcd(&k) != 1 {
                continue;
            }
            checked += 1;
            let lhs = dedekind_sum(&h, &k) + dedekind_sum(&k, &h);
            let rhs = Ratio::new(-1, 4) + (Ratio::new(h, k) + Ratio::new(k, h) + Ratio::new(1, h * k)) / 12;
            if lhs != rhs || dedekind_sum(&h, &k) != dedekind_sum_naive(&h, &k) {
                failures.push(format!("s({h},{k})"));
            }
        }
    }
    outcome("Dedekind reciprocity", failures, checked)
}

fn check_distinct(records: &[ClassRecord]) -> CheckOutcome {
    let small: Vec<&ClassRecord> = records.iter().filter(|r| r.trace() < &BigInt::from(12)).collect();
    let mut failures = Vec::new();
    let mut checked = 0;
    for (i, x) in small.iter().enumerate() {
        for y in &small[i + 1..] {
            if x.trace() != y.trace() {
                continue;
            }
            checked += 1;
            if are_conjugate_oracle(&x.rep, &y.rep, 6) {
                failures.push(format!("{} ~ {}", x.necklace, y.necklace));
            }
        }
    }
    outcome("same-trace necklaces pairwise non-conjugate", failures, checked)
}

fn check_generators() -> CheckOutcome {
    let lr = word_to_matrix::<BigInt>(&"LR".parse().expect("literal"));
    let expected = Mat2::from_i64(1, 1, 1, 2).expect("unimodular");
    let failures = if lr == expected { vec![] } else { vec![format!("LR = {lr}")] };
    outcome("generator convention", failures, 1)
}

/// Run every check at the configured scale.
pub fn run_suite(cfg: &VerifyConfig) -> Result<Vec<CheckOutcome>> {
    let records = enumerate_classes(&EnumerationParams::new(cfg.trace_bound.max(4), cfg.worker_count)?)?;
    let psis = psi_values(&records)?;
    Ok(vec![
        check_generators(),
        check_oracle(cfg)?,
        check_records(&records),
        check_psi_routes(&records, &psis),
        check_psi_invariance(&records)?,
        check_mirror(&psis)?,
        check_numeric_oracle(&records)?,
        check_winding(cfg, &records, &psis),
        check_dedekind(),
        check_distinct(&records),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_suite_passes() {
        let cfg = VerifyConfig { trace_bound: 14, oracle_guard: 14, ..Default::default() };
        let out = run_suite(&cfg).unwrap();
        for o in &out {
            assert!(o.passed, "{}: {}", o.name, o.detail);
        }
    }
}

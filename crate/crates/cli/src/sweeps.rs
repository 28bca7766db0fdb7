//! Verification sweeps behind `verify`: duality, oracle agreement, the
//! closed-form generating function, and formula-tower consistency.
//!
//! Sweeps enumerate cases in a fixed deterministic order and report every
//! failed comparison; progress goes to standard error so standard output
//! stays machine-readable.

use polybernoulli::{
    compositions, double_index_formula, duality_check, ell_sum_series, explicit_multi,
    genfunc_closed, li_sha_series, oracle_ell_sum, oracle_li_sha, poly_bernoulli,
    single_index_multiple, triple_index_formula_a, triple_index_formula_b, verify_genfunc,
    IndexTuple, Mismatch, Rational, WeightTuple,
};

use crate::render::VerifyReport;

/// All tuples of the given length over `0..=max`, lexicographically.
fn cube(len: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * (max as usize + 1));
        for prefix in &out {
            for v in 0..=max {
                let mut t = prefix.clone();
                t.push(v);
                next.push(t);
            }
        }
        out = next;
    }
    out
}

/// Cartesian power of a fixed choice set, lexicographic in positions.
fn weight_tuples(choices: &[i64], len: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * choices.len());
        for prefix in &out {
            for &v in choices {
                let mut t = prefix.clone();
                t.push(v);
                next.push(t);
            }
        }
        out = next;
    }
    out
}

/// Index tuples of length `len` with entry sum at most `max_total`, in
/// graded-lexicographic order.
fn bounded_sum_tuples(len: usize, max_total: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for total in 0..=max_total {
        for c in compositions(total, len) {
            out.push(c.parts().to_vec());
        }
    }
    out
}

pub fn duality_sweep(r: usize, max: u32) -> VerifyReport {
    let tuples = cube(r, max);
    let cases = (tuples.len() * tuples.len()) as u64;
    eprintln!("verify duality: r={r} max={max} ({cases} cases)");
    let mut mismatches = Vec::new();
    for m in &tuples {
        let mt = IndexTuple::new(m.clone());
        for k in &tuples {
            let res = duality_check(&mt, &IndexTuple::new(k.clone()));
            if !res.holds {
                mismatches.push(Mismatch {
                    m: m.clone(),
                    k: k.iter().map(|&v| v as i64).collect(),
                    lhs: res.lhs,
                    rhs: res.rhs,
                });
            }
        }
    }
    VerifyReport {
        suite: "duality".into(),
        cases_checked: cases,
        mismatches,
    }
}

pub fn oracle_sweep(r: usize, max_total: u32, choices: &[i64]) -> VerifyReport {
    let index_tuples = bounded_sum_tuples(r, max_total);
    let k_tuples = weight_tuples(choices, r);
    let cases = (index_tuples.len() * k_tuples.len()) as u64;
    eprintln!("verify oracle: r={r} sum(m)<={max_total} ({cases} cases)");
    let mut mismatches = Vec::new();
    for k in &k_tuples {
        let kt = WeightTuple::new(k.clone());
        for m in &index_tuples {
            let mt = IndexTuple::new(m.clone());
            let reference = explicit_multi(&mt, &kt);
            let ell = oracle_ell_sum(&mt, &kt);
            let li = oracle_li_sha(&mt, &kt);
            if ell != reference {
                dump_series("ell-sum", &ell_sum_series(&kt, mt.total()));
                mismatches.push(Mismatch {
                    m: m.clone(),
                    k: k.clone(),
                    lhs: reference.clone(),
                    rhs: ell,
                });
            }
            if li != reference {
                dump_series("li-sha", &li_sha_series(&kt, mt.total()));
                mismatches.push(Mismatch {
                    m: m.clone(),
                    k: k.clone(),
                    lhs: reference,
                    rhs: li,
                });
            }
        }
    }
    VerifyReport {
        suite: "oracle".into(),
        cases_checked: cases,
        mismatches,
    }
}

pub fn genfunc_sweep(r: usize, degree: u32) -> VerifyReport {
    eprintln!("verify genfunc: r={r} degree={degree}");
    let mismatches = verify_genfunc(r, degree);
    if !mismatches.is_empty() {
        dump_series("genfunc", &genfunc_closed(r, degree));
    }
    let mut cases = 0u64;
    for total in 0..=degree {
        cases += compositions(total, 2 * r).count() as u64;
    }
    VerifyReport {
        suite: "genfunc".into(),
        cases_checked: cases,
        mismatches,
    }
}

pub fn formulas_sweep(r: usize, max_m: u32, choices: &[i64]) -> VerifyReport {
    let k_tuples = weight_tuples(choices, r);
    let m_tuples: Vec<Vec<u32>> = cube(r, max_m)
        .into_iter()
        .filter(|m| m.iter().all(|&e| e <= max_m))
        .collect();
    eprintln!(
        "verify formulas: r={r} max-m={max_m} ({} index tuples, {} weight tuples)",
        m_tuples.len(),
        k_tuples.len()
    );
    let mut cases = 0u64;
    let mut mismatches = Vec::new();
    let mut push = |m: &[u32], k: &[i64], lhs: Rational, rhs: Rational| {
        if lhs != rhs {
            mismatches.push(Mismatch {
                m: m.to_vec(),
                k: k.to_vec(),
                lhs,
                rhs,
            });
        }
    };

    // specialized formulas exist for ranks 1 through 3 only
    if r <= 3 {
        for m in &m_tuples {
            let mt = IndexTuple::new(m.clone());
            for k in &k_tuples {
                let kt = WeightTuple::new(k.clone());
                let reference = explicit_multi(&mt, &kt);
                cases += 1;
                match r {
                    1 => {
                        push(m, k, reference.clone(), poly_bernoulli(m[0], k[0]));
                        if k[0] == 1 {
                            push(m, k, reference, polybernoulli::classical_bernoulli(m[0]));
                        }
                    }
                    2 => push(
                        m,
                        k,
                        reference,
                        double_index_formula(m[0], m[1], k[0], k[1]),
                    ),
                    _ => {
                        push(
                            m,
                            k,
                            reference.clone(),
                            triple_index_formula_a(m[0], m[1], m[2], k[0], k[1], k[2]),
                        );
                        push(
                            m,
                            k,
                            reference,
                            triple_index_formula_b(m[0], m[1], m[2], k[0], k[1], k[2]),
                        );
                    }
                }
            }
        }
    }

    // the single-index family B_n^{(k_1..k_r)} degenerates to the tuple (0,..,0,n)
    for n in 0..=max_m {
        let mut m = vec![0u32; r];
        m[r - 1] = n;
        let mt = IndexTuple::new(m.clone());
        for k in &k_tuples {
            let kt = WeightTuple::new(k.clone());
            cases += 1;
            push(
                &m,
                k,
                single_index_multiple(n, &kt),
                explicit_multi(&mt, &kt),
            );
        }
    }

    VerifyReport {
        suite: "formulas".into(),
        cases_checked: cases,
        mismatches,
    }
}

fn dump_series(label: &str, series: &polybernoulli::MultiSeries) {
    eprintln!("debug {label} series: {}", series.to_json_string());
}

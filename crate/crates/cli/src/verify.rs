//! The verification suites behind `descent verify`.
//!
//! Each suite generates an indexed list of independent cases, distributes
//! them over a worker pool, and merges results by case index, so the first
//! reported counterexample is deterministic for a given seed regardless of
//! the parallelism degree.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use descent_core::compositions::{fibonacci_order, SubsetOfRanks};
use descent_core::descent_algebra::dynkin::{
    dynkin_action_coeff, dynkin_action_on_b, dynkin_sigma, enumerate_survivors,
    for_each_matrix_with_reading_word, involution_step, is_survivor, peak_action_on_b,
    prefix_action_coeff,
};
use descent_core::descent_algebra::mackey::multiply_b;
use descent_core::descent_algebra::matrix::{exact_rank, DenseMatrix};
use descent_core::descent_algebra::spectrum::{
    dynkin_action_matrix, eigenvalue_poly, image_dimension, image_relations, zero_coeff_predicate,
    QKind,
};
use descent_core::descent_algebra::{d_to_b, multiply_sigma, Basis, SigmaElement};
use descent_core::scalars::{
    specialize_at_root, CyclotomicField, Integer, Integers, LaurentPoly, LaurentRing,
    Rational, Rationals, Ring,
};
use descent_core::symmetric_group::{
    b_element, dynkin_element, dynkin_element_product_form, expand_in_sigma, multiply,
};

/// A verification failure, printed as JSON before exiting with code 1.
#[derive(Clone, Debug)]
pub struct Counterexample {
    pub suite: &'static str,
    pub n: usize,
    pub i: Option<Vec<usize>>,
    pub j: Option<Vec<usize>>,
    pub k: Option<Vec<usize>>,
    pub expected: String,
    pub got: String,
}

impl Counterexample {
    pub fn to_json(&self) -> Value {
        let opt = |v: &Option<Vec<usize>>| match v {
            Some(xs) => json!(xs),
            None => Value::Null,
        };
        json!({
            "suite": self.suite,
            "n": self.n,
            "i": opt(&self.i),
            "j": opt(&self.j),
            "k": opt(&self.k),
            "expected": self.expected,
            "got": self.got,
        })
    }
}

pub struct SuiteOutcome {
    pub name: &'static str,
    pub cases: usize,
}

struct Suite {
    name: &'static str,
    default_cap: usize,
    hard_cap: usize,
    run: fn(usize, u64) -> Result<usize, Box<Counterexample>>,
}

const SUITES: &[Suite] = &[
    Suite { name: "mackey-oracle", default_cap: 5, hard_cap: 7, run: run_mackey_oracle },
    Suite { name: "vnq-threeway", default_cap: 5, hard_cap: 7, run: run_threeway },
    Suite { name: "involution", default_cap: 6, hard_cap: 8, run: run_involution },
    Suite { name: "eigenvalues", default_cap: 9, hard_cap: 12, run: run_eigenvalues },
    Suite { name: "zero-class", default_cap: 5, hard_cap: 7, run: run_zero_class },
    Suite { name: "rank", default_cap: 7, hard_cap: 9, run: run_rank },
    Suite { name: "peak", default_cap: 9, hard_cap: 12, run: run_peak },
    Suite { name: "idempotence", default_cap: 7, hard_cap: 10, run: run_idempotence },
    Suite { name: "product-form", default_cap: 7, hard_cap: 9, run: run_product_form },
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.name).collect()
}

/// Runs one suite (or all of them) under a worker pool of the requested
/// size. Returns the outcomes, or the first counterexample in case order.
pub fn run(
    name: &str,
    n_cap: Option<usize>,
    seed: u64,
    jobs: usize,
    no_cap: bool,
) -> Result<Result<Vec<SuiteOutcome>, Box<Counterexample>>, String> {
    let selected: Vec<&Suite> = if name == "all" {
        SUITES.iter().collect()
    } else {
        let found = SUITES.iter().find(|s| s.name == name).ok_or_else(|| {
            format!(
                "unknown suite '{name}'; expected one of: all, {}",
                suite_names().join(", ")
            )
        })?;
        vec![found]
    };
    for suite in &selected {
        if let Some(cap) = n_cap {
            if cap > suite.hard_cap && !no_cap {
                return Err(format!(
                    "--n-cap {cap} exceeds the documented cap {} for suite '{}' (use --unsafe-no-cap to override)",
                    suite.hard_cap, suite.name
                ));
            }
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| format!("cannot build worker pool: {e}"))?;
    let result = pool.install(|| {
        let mut outcomes = Vec::new();
        for suite in &selected {
            let cap = n_cap.unwrap_or(suite.default_cap);
            match (suite.run)(cap, seed) {
                Ok(cases) => outcomes.push(SuiteOutcome { name: suite.name, cases }),
                Err(ce) => return Err(ce),
            }
        }
        Ok(outcomes)
    });
    Ok(result)
}

fn members(mask: usize, n: usize) -> Vec<usize> {
    SubsetOfRanks::from_mask(n, mask).members()
}

/// Runs indexed cases in parallel; the failure with the lowest case index wins.
fn run_cases<C: Sync, F: Sync + Fn(&C) -> Option<Counterexample>>(
    cases: &[C],
    check: F,
) -> Result<usize, Box<Counterexample>> {
    let failures: Vec<(usize, Counterexample)> = cases
        .par_iter()
        .enumerate()
        .filter_map(|(idx, case)| check(case).map(|ce| (idx, ce)))
        .collect();
    match failures.into_iter().min_by_key(|(idx, _)| *idx) {
        None => Ok(cases.len()),
        Some((_, ce)) => Err(Box::new(ce)),
    }
}

fn sigma_mismatch<R: Ring>(
    suite: &'static str,
    n: usize,
    i: Option<usize>,
    j: Option<usize>,
    lhs: &SigmaElement<R>,
    rhs: &SigmaElement<R>,
) -> Option<Counterexample> {
    if lhs == rhs {
        return None;
    }
    // report the first subset where the two expansions disagree
    let zero_l = "0".to_string();
    for kmask in 0..(1usize << (n - 1)) {
        let set = SubsetOfRanks::from_mask(n, kmask);
        let l = lhs.coeff(&set).map(|c| format!("{c}")).unwrap_or_else(|| zero_l.clone());
        let r = rhs.coeff(&set).map(|c| format!("{c}")).unwrap_or_else(|| zero_l.clone());
        if l != r {
            return Some(Counterexample {
                suite,
                n,
                i: i.map(|m| members(m, n)),
                j: j.map(|m| members(m, n)),
                k: Some(members(kmask, n)),
                expected: l,
                got: r,
            });
        }
    }
    None
}

fn run_mackey_oracle(cap: usize, seed: u64) -> Result<usize, Box<Counterexample>> {
    let mut cases: Vec<(usize, usize, usize)> = Vec::new();
    for n in 1..=cap.min(5) {
        for imask in 0..(1usize << (n - 1)) {
            for jmask in 0..(1usize << (n - 1)) {
                cases.push((n, imask, jmask));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in 6..=cap {
        let top = 1usize << (n - 1);
        for _ in 0..200 {
            cases.push((n, rng.gen_range(0..top), rng.gen_range(0..top)));
        }
    }
    run_cases(&cases, |&(n, imask, jmask)| {
        let ring = Integers;
        let i = SubsetOfRanks::from_mask(n, imask);
        let j = SubsetOfRanks::from_mask(n, jmask);
        let fast = multiply_b(&i, &j);
        let slow = expand_in_sigma(
            &ring,
            &multiply(&ring, &b_element(&ring, &j), &b_element(&ring, &i)),
        )
        .expect("B-products stay in the descent algebra");
        sigma_mismatch("mackey-oracle", n, Some(imask), Some(jmask), &slow, &fast)
    })
}

fn run_threeway(cap: usize, _seed: u64) -> Result<usize, Box<Counterexample>> {
    let mut cases: Vec<(usize, usize)> = Vec::new();
    for n in 1..=cap {
        for imask in 0..(1usize << (n - 1)) {
            cases.push((n, imask));
        }
    }
    run_cases(&cases, |&(n, imask)| {
        let ring = LaurentRing;
        let q = LaurentPoly::variable();
        let i = SubsetOfRanks::from_mask(n, imask);
        let oracle = expand_in_sigma(
            &ring,
            &multiply(&ring, &dynkin_element(&ring, n, &q), &b_element(&ring, &i)),
        )
        .expect("in descent algebra");
        for kmask in 0..(1usize << (n - 1)) {
            let kk = SubsetOfRanks::from_mask(n, kmask);
            let closed = dynkin_action_coeff(n, &i, &kk);
            let mut layered = LaurentPoly::zero();
            for k in 1..=n {
                let c = prefix_action_coeff(n, k, &i, &kk);
                layered = layered.add(
                    &ring
                        .pow(&q.neg(), (k - 1) as u32)
                        .mul(&LaurentPoly::from_int(c)),
                );
            }
            let from_oracle = oracle.coeff(&kk).cloned().unwrap_or_else(LaurentPoly::zero);
            if closed != layered || closed != from_oracle {
                return Some(Counterexample {
                    suite: "vnq-threeway",
                    n,
                    i: Some(members(imask, n)),
                    j: None,
                    k: Some(members(kmask, n)),
                    expected: format!("{from_oracle}"),
                    got: format!("closed={closed} layered={layered}"),
                });
            }
        }
        None
    })
}

fn run_involution(cap: usize, _seed: u64) -> Result<usize, Box<Counterexample>> {
    let mut cases: Vec<(usize, usize, usize)> = Vec::new();
    for n in 1..=cap {
        for kmask in 0..(1usize << (n - 1)) {
            let mut imask = kmask;
            loop {
                cases.push((n, imask, kmask));
                if imask == 0 {
                    break;
                }
                imask = (imask - 1) & kmask;
            }
        }
    }
    run_cases(&cases, |&(n, imask, kmask)| {
        let i = SubsetOfRanks::from_mask(n, imask);
        let kk = SubsetOfRanks::from_mask(n, kmask);
        let fail = |expected: String, got: String| Counterexample {
            suite: "involution",
            n,
            i: Some(members(imask, n)),
            j: None,
            k: Some(members(kmask, n)),
            expected,
            got,
        };
        let survivors = enumerate_survivors(&i, &kk).expect("I ⊆ K");
        for s in &survivors {
            if !is_survivor(&s.matrix) {
                return Some(fail("survivor".into(), format!("{:?}", s.matrix)));
            }
            if s.matrix.cols() != 2 + kk.size() - s.positions.len() {
                return Some(fail(
                    format!("col = {}", 2 + kk.size() - s.positions.len()),
                    format!("col = {}", s.matrix.cols()),
                ));
            }
        }
        let survivor_set: std::collections::BTreeSet<_> =
            survivors.iter().map(|s| s.matrix.clone()).collect();
        let mut all_signed = 0i64;
        let mut surv_signed = 0i64;
        let mut bad: Option<Counterexample> = None;
        for_each_matrix_with_reading_word(&i, &kk, |m| {
            if bad.is_some() {
                return;
            }
            let sign = if m.cols() % 2 == 0 { 1 } else { -1 };
            all_signed += sign;
            match involution_step(m) {
                None => {
                    if !survivor_set.contains(m) {
                        bad = Some(fail("fixed point is a survivor".into(), format!("{m:?}")));
                        return;
                    }
                    surv_signed += sign;
                }
                Some(step) => {
                    let back = involution_step(&step);
                    if back.as_ref() != Some(m)
                        || (step.cols() as i64 - m.cols() as i64).abs() != 1
                    {
                        bad = Some(fail("an inverse, sign-reversing step".into(), format!("{m:?}")));
                    }
                }
            }
        });
        if bad.is_some() {
            return bad;
        }
        if all_signed != surv_signed {
            return Some(fail(format!("signed sum {all_signed}"), format!("{surv_signed}")));
        }
        None
    })
}

fn run_eigenvalues(cap: usize, _seed: u64) -> Result<usize, Box<Counterexample>> {
    let mut cases: Vec<(usize, usize)> = Vec::new();
    for n in 1..=cap {
        for imask in 0..(1usize << (n - 1)) {
            cases.push((n, imask));
        }
    }
    run_cases(&cases, |&(n, imask)| {
        let i = SubsetOfRanks::from_mask(n, imask);
        let diagonal = dynkin_action_coeff(n, &i, &i);
        let one_minus_q = LaurentPoly::from_int(1).sub(&LaurentPoly::variable());
        let mut product = LaurentPoly::from_int(1);
        for &v in i.comp_of().parts() {
            let qv = LaurentPoly::monomial(v as i64, Rational::from_integer(1.into()));
            product = product.mul(&LaurentPoly::from_int(1).sub(&qv));
        }
        let lhs = one_minus_q.mul(&diagonal);
        if lhs != product || eigenvalue_poly(&i) != diagonal {
            return Some(Counterexample {
                suite: "eigenvalues",
                n,
                i: Some(members(imask, n)),
                j: None,
                k: None,
                expected: format!("{product}"),
                got: format!("{lhs}"),
            });
        }
        None
    })
}

fn run_zero_class(cap: usize, _seed: u64) -> Result<usize, Box<Counterexample>> {
    let mut cases: Vec<(usize, usize, usize)> = Vec::new();
    for n in 1..=cap {
        for imask in 0..(1usize << (n - 1)) {
            for kmask in 0..(1usize << (n - 1)) {
                cases.push((n, imask, kmask));
            }
        }
    }
    run_cases(&cases, |&(n, imask, kmask)| {
        let i = SubsetOfRanks::from_mask(n, imask);
        let kk = SubsetOfRanks::from_mask(n, kmask);
        let poly = dynkin_action_coeff(n, &i, &kk);
        let rat = |v: i64| Rational::from_integer(v.into());
        let zero = rat(0);
        let eval_is_zero = |at: i64| poly.eval_rational(&rat(at)).unwrap() == zero;
        let checks: Vec<(QKind, bool, &str)> = vec![
            (QKind::RootOfUnity(2), specialize_at_root(&poly, 2).is_zero(), "zeta_2"),
            (QKind::RootOfUnity(3), specialize_at_root(&poly, 3).is_zero(), "zeta_3"),
            (QKind::RootOfUnity(4), specialize_at_root(&poly, 4).is_zero(), "zeta_4"),
            (QKind::RootOfUnity(5), specialize_at_root(&poly, 5).is_zero(), "zeta_5"),
            (QKind::One, eval_is_zero(1), "1"),
            (QKind::Zero, eval_is_zero(0), "0"),
            (QKind::GenericNonRoot, eval_is_zero(2), "2"),
        ];
        for (kind, actually_zero, label) in checks {
            let predicted = zero_coeff_predicate(kind, &i, &kk);
            if predicted != actually_zero {
                return Some(Counterexample {
                    suite: "zero-class",
                    n,
                    i: Some(members(imask, n)),
                    j: None,
                    k: Some(members(kmask, n)),
                    expected: format!("zero={predicted} at q={label}"),
                    got: format!("zero={actually_zero}"),
                });
            }
        }
        None
    })
}

fn run_rank(cap: usize, _seed: u64) -> Result<usize, Box<Counterexample>> {
    let mut cases: Vec<(usize, Option<usize>, Option<i64>)> = Vec::new();
    for n in 1..=cap {
        for p in 2..=6usize {
            cases.push((n, Some(p), None));
        }
        for q in [2i64, 3, -2] {
            cases.push((n, None, Some(q)));
        }
    }
    run_cases(&cases, |&(n, p, q)| match (p, q) {
        (Some(p), _) => {
            let rank = image_dimension(n, p);
            let fib = fibonacci_order(n, p) as usize;
            if rank != fib {
                return Some(Counterexample {
                    suite: "rank",
                    n,
                    i: None,
                    j: None,
                    k: None,
                    expected: format!("rank {fib} over Q(zeta_{p})"),
                    got: format!("rank {rank}"),
                });
            }
            relations_annihilate(n, p).err().map(|ce| *ce)
        }
        (None, Some(q)) => {
            let field = Rationals;
            let m = dynkin_action_matrix(&field, n, &Rational::from_integer(q.into()));
            let rank = exact_rank(&field, &m);
            (rank != 1 << (n - 1)).then(|| Counterexample {
                suite: "rank",
                n,
                i: None,
                j: None,
                k: None,
                expected: format!("full rank {} at q={q}", 1 << (n - 1)),
                got: format!("rank {rank}"),
            })
        }
        _ => unreachable!(),
    })
}

fn run_peak(cap: usize, _seed: u64) -> Result<usize, Box<Counterexample>> {
    let mut cases: Vec<(usize, usize)> = Vec::new();
    for n in 1..=cap {
        for imask in 0..(1usize << (n - 1)) {
            cases.push((n, imask));
        }
    }
    run_cases(&cases, |&(n, imask)| {
        let ring = Integers;
        let i = SubsetOfRanks::from_mask(n, imask);
        let peak = peak_action_on_b(n, &i);
        let specialized = dynkin_action_on_b(&ring, n, &Integer::from(-1), &i);
        sigma_mismatch("peak", n, Some(imask), None, &specialized, &peak)
    })
}

fn run_idempotence(cap: usize, _seed: u64) -> Result<usize, Box<Counterexample>> {
    // (n, None): V² = nV; (n, Some(imask)): the B- and D-action identities
    let mut cases: Vec<(usize, Option<usize>)> = Vec::new();
    for n in 1..=cap {
        cases.push((n, None));
        if n <= cap.min(8) {
            for imask in 0..(1usize << (n - 1)) {
                cases.push((n, Some(imask)));
            }
        }
    }
    run_cases(&cases, |&(n, imask)| {
        let ring = Integers;
        let one = Integer::from(1);
        let v = d_to_b(&ring, &dynkin_sigma(&ring, n, &one));
        match imask {
            None => {
                let square = multiply_sigma(&ring, &v, &v);
                let expect = v.scale(&ring, &Integer::from(n as i64));
                sigma_mismatch("idempotence", n, None, None, &expect, &square)
            }
            Some(imask) => {
                let i = SubsetOfRanks::from_mask(n, imask);
                let b = SigmaElement::generator(&ring, Basis::B, i);
                let vb = multiply_sigma(&ring, &v, &b);
                let expect_b = if imask == 0 {
                    v.clone()
                } else {
                    SigmaElement::zero(n, Basis::B)
                };
                if let Some(ce) = sigma_mismatch("idempotence", n, Some(imask), None, &expect_b, &vb)
                {
                    return Some(ce);
                }
                let d = d_to_b(&ring, &SigmaElement::generator(&ring, Basis::D, i));
                let vd = multiply_sigma(&ring, &v, &d);
                let expect_d = if imask.count_ones() % 2 == 0 {
                    v.clone()
                } else {
                    v.neg(&ring)
                };
                sigma_mismatch("idempotence", n, Some(imask), None, &expect_d, &vd)
            }
        }
    })
}

fn run_product_form(cap: usize, _seed: u64) -> Result<usize, Box<Counterexample>> {
    let cases: Vec<usize> = (1..=cap).collect();
    run_cases(&cases, |&n| {
        let ring = LaurentRing;
        let q = LaurentPoly::variable();
        let sum_form = dynkin_element(&ring, n, &q);
        let product_form = dynkin_element_product_form(&ring, n, &q);
        if sum_form != product_form {
            // report the first differing permutation coefficient
            for (w, c) in sum_form.terms() {
                let other = product_form.coeff(w).cloned().unwrap_or_else(LaurentPoly::zero);
                if *c != other {
                    return Some(Counterexample {
                        suite: "product-form",
                        n,
                        i: None,
                        j: None,
                        k: None,
                        expected: format!("{c} on {:?}", w.one_line()),
                        got: format!("{other}"),
                    });
                }
            }
        }
        None
    })
}

/// The relation-family half of the rank suite: the emitted relations
/// annihilate every column of the action matrix over `ℚ(ζ_p)`, are counted
/// by `2^{n-1} - s_n^{(p)}`, and have full row rank.
fn relations_annihilate(n: usize, p: usize) -> Result<usize, Box<Counterexample>> {
    let rels = image_relations(n, p);
    let expected = (1usize << (n - 1)) - fibonacci_order(n, p) as usize;
    if rels.len() != expected {
        return Err(Box::new(Counterexample {
            suite: "rank",
            n,
            i: None,
            j: None,
            k: None,
            expected: format!("{expected} relations"),
            got: format!("{}", rels.len()),
        }));
    }
    let field = CyclotomicField::new(p);
    let m = dynkin_action_matrix(&field, n, &field.zeta());
    let size = 1usize << (n - 1);
    for rel in &rels {
        let row = rel.row(&field, n);
        for imask in 0..size {
            let mut acc = field.zero();
            for (kmask, r_k) in row.iter().enumerate() {
                if field.is_zero(r_k) {
                    continue;
                }
                acc = field.add(&acc, &field.mul(r_k, m.get(kmask, imask)));
            }
            if !field.is_zero(&acc) {
                return Err(Box::new(Counterexample {
                    suite: "rank",
                    n,
                    i: Some(members(imask, n)),
                    j: None,
                    k: Some(rel.key().members()),
                    expected: "0".into(),
                    got: format!("{acc}"),
                }));
            }
        }
    }
    if !rels.is_empty() {
        let rows: Vec<Vec<Rational>> = rels.iter().map(|r| r.row(&Rationals, n)).collect();
        let mat = DenseMatrix::from_fn(rows.len(), size, |r, c| rows[r][c].clone());
        let rank = exact_rank(&Rationals, &mat);
        if rank != rels.len() {
            return Err(Box::new(Counterexample {
                suite: "rank",
                n,
                i: None,
                j: None,
                k: None,
                expected: format!("row rank {}", rels.len()),
                got: format!("{rank}"),
            }));
        }
    }
    Ok(rels.len())
}

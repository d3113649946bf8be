//! Acceptance suite. Prints one PASS/FAIL line per criterion with its runtime
//! and exits nonzero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use keypos::apps::immanant_key_expansion;
use keypos::combinat::{all_reduced_words, dominance_leq};
use keypos::crystal::{highest_weights, unpaired, Crystal, TableauCrystal};
use keypos::demazure::*;
use keypos::jt::{flagged_jt_matrix, flagged_skew_schur_det, minor};
use keypos::keys::AscentChoice;
use keypos::tableau::{
    enumerate_tableaux, enumerate_with_bounds, flagged_schur, FlaggedSet, RowBounds, Shape, SkewShape, Tableau,
};
use keypos::tl::{project_perm, project_perm_along, theta_set, tl_basis, tl_immanant, TLDiagram, TLElement};
use keypos::{key_expand, Composition, Flag, IntPoly, KeyCache, Partition, Permutation};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

// ---------------------------------------------------------------------------
// Independent oracle: polynomials as exponent maps, key polynomials by
// isobaric divided differences.

type Poly = BTreeMap<Vec<u32>, i64>;

fn add_term(p: &mut Poly, e: Vec<u32>, c: i64) {
    let slot = p.entry(e.clone()).or_insert(0);
    *slot += c;
    if *slot == 0 {
        p.remove(&e);
    }
}

fn pi(p: &Poly, i: usize) -> Poly {
    let mut out = Poly::new();
    for (e, &c) in p {
        let (a, b) = (e[i - 1] as i64, e[i] as i64);
        let mut put = |x: i64, y: i64, c: i64| {
            let mut f = e.clone();
            f[i - 1] = x as u32;
            f[i] = y as u32;
            add_term(&mut out, f, c);
        };
        if a >= b {
            for k in 0..=(a - b) {
                put(a - k, b + k, c);
            }
        } else {
            for k in 1..(b - a) {
                put(a + k, b - k, -c);
            }
        }
    }
    out
}

fn key_oracle(alpha: &[u32]) -> Poly {
    match (0..alpha.len().saturating_sub(1)).find(|&i| alpha[i] < alpha[i + 1]) {
        None => Poly::from([(alpha.to_vec(), 1)]),
        Some(i) => {
            let mut swapped = alpha.to_vec();
            swapped.swap(i, i + 1);
            pi(&key_oracle(&swapped), i + 1)
        }
    }
}

fn from_lib(p: &IntPoly) -> Poly {
    p.terms()
        .map(|(e, c)| (e.clone(), i64::try_from(c).expect("small coefficient")))
        .collect()
}

fn character_of<'a>(elems: impl IntoIterator<Item = &'a Tableau>, n: usize) -> Poly {
    let mut p = Poly::new();
    for t in elems {
        add_term(&mut p, t.weight_len(n).0, 1);
    }
    p
}

/// `w(v)` with permutations acting on positions: entry `i` moves to `w(i)`.
fn act(w: &Permutation, v: &[u32]) -> Vec<u32> {
    let mut out = vec![0; v.len()];
    for (i, &x) in v.iter().enumerate() {
        out[w.apply(i + 1) - 1] = x;
    }
    out
}

fn part(v: &[u32]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

fn flag(v: &[u32]) -> Flag {
    Flag::new(v.to_vec()).unwrap()
}

fn trimmed(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

// ---------------------------------------------------------------------------
// The command-line binary.

fn keypos(args: &[&str]) -> Result<(i32, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_keypos"))
        .args(args)
        .output()
        .map_err(|e| format!("spawn failed: {e}"))?;
    Ok((out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned()))
}

fn keypos_json(args: &[&str]) -> Result<Value, String> {
    let (code, out) = keypos(args)?;
    ensure!(code == 0, "exit code {code} for {args:?}");
    serde_json::from_str(&out).map_err(|e| format!("bad json: {e}"))
}

/// The `{(a,b,c):k,...}` text form as a map with trailing zeros dropped.
fn parse_expansion(text: &str) -> Result<BTreeMap<Vec<u32>, i64>, String> {
    let body = text.trim().strip_prefix('{').and_then(|s| s.strip_suffix('}')).ok_or("no braces")?;
    let mut out = BTreeMap::new();
    for term in body.split(",(").filter(|t| !t.is_empty()) {
        let (idx, coeff) = term.trim_start_matches('(').split_once("):").ok_or("bad term")?;
        let idx = idx.split(',').map(str::parse).collect::<Result<Vec<u32>, _>>().map_err(|e| e.to_string())?;
        out.insert(trimmed(idx), coeff.parse::<i64>().map_err(|e| e.to_string())?);
    }
    Ok(out)
}

fn expansion(terms: &[(&[u32], i64)]) -> BTreeMap<Vec<u32>, i64> {
    terms.iter().map(|(a, c)| (trimmed(a.to_vec()), *c)).collect()
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure!(t <= limit, "took {t:?}, limit {limit:?}");
    Ok(())
}

const DRAWN: &str = "[[L1,L2],[L3,L4],[R1,R2],[R3,R4]]";

// ---------------------------------------------------------------------------

fn c1_nonstrict_counterexample() -> Outcome {
    let start = Instant::now();
    let args = ["immanant", "--lambda", "7,7,7,5", "--mu", "6,4,3,2", "--flag", "1,2,2,3", "--tau", DRAWN];
    let j = keypos_json(&args)?;
    let (_, text) = keypos(&[&args[..], &["--text"]].concat())?;
    within(start, Duration::from_secs(60))?;
    let got = parse_expansion(&text)?;
    let printed = expansion(&[
        (&[3, 6, 2], 1),
        (&[3, 7, 1], 1),
        (&[3, 8], 1),
        (&[4, 5, 2], 1),
        (&[4, 6, 1], 1),
        (&[4, 7], 1),
        (&[5, 4, 2], -1),
        (&[6, 3, 2], -1),
        (&[6, 4, 1], -1),
        (&[7, 3, 1], -1),
        (&[7, 4], -1),
        (&[8, 3], -1),
    ]);
    let m = flagged_jt_matrix::<keypos::Int>(&[7, 7, 7, 5], &[6, 4, 3, 2], &flag(&[1, 2, 2, 3]), 3).unwrap();
    let rows_coincide = m.entries[1] == m.entries[2];
    ensure!(
        got == printed && j["key_positive"] == false,
        "expected the printed 12-term expansion, got {} terms {} (key_positive = {}; rows 2 and 3 of the matrix coincide: {rows_coincide})",
        got.len(),
        text.trim(),
        j["key_positive"]
    );
    Ok("12 terms match, not key positive".into())
}

fn c2_strict_case() -> Outcome {
    let start = Instant::now();
    let args = ["immanant", "--lambda", "8,7,6,5", "--mu", "6,4,3,2", "--flag", "1,2,2,3", "--tau", DRAWN];
    let j = keypos_json(&args)?;
    let (_, text) = keypos(&[&args[..], &["--text"]].concat())?;
    within(start, Duration::from_secs(60))?;
    let printed = expansion(&[
        (&[5, 4, 2], 1),
        (&[5, 5, 1], 1),
        (&[5, 6], 1),
        (&[6, 3, 2], 1),
        (&[6, 4, 1], 1),
        (&[7, 3, 1], 1),
        (&[7, 4], 1),
        (&[8, 3], 1),
    ]);
    let got = parse_expansion(&text)?;
    ensure!(got == printed, "got {}", text.trim());
    ensure!(j["key_positive"] == true, "positivity reported false");
    Ok("8 terms match, key positive".into())
}

fn c3_product_example() -> Outcome {
    let start = Instant::now();
    let args = ["product", "--lambda", "3,2", "--nu", "2,1", "--flag", "1,3"];
    let j = keypos_json(&args)?;
    let (_, text) = keypos(&[&args[..], &["--text"]].concat())?;
    let want = expansion(&[(&[5, 1, 2], 1), (&[5, 0, 3], 1)]);
    ensure!(parse_expansion(&text)? == want, "direct path gave {}", text.trim());
    ensure!(j["paths_agree"] == true, "crystal path gave {}", j["crystal_expansion"]);
    ensure!(j["expansion"] == j["crystal_expansion"], "paths differ in JSON");

    let shape = Shape::shuffle(SkewShape::straight(part(&[3, 2])), SkewShape::straight(part(&[2, 1])));
    let fig = |rows: [&[u32]; 4]| {
        Tableau::from_rows(shape.clone(), &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    };
    let drawn = [
        fig([&[1, 1, 1], &[2, 2], &[3, 3], &[4]]),
        fig([&[1, 1, 1], &[1, 1], &[2, 2], &[3]]),
        fig([&[1, 1, 1], &[1, 1], &[2, 2], &[2]]),
        fig([&[1, 1, 1], &[1, 2], &[2, 3], &[3]]),
        fig([&[1, 1, 1], &[1, 2], &[2, 3], &[4]]),
        fig([&[1, 1, 1], &[1, 2], &[2, 3], &[2]]),
    ];
    let red: BTreeSet<Tableau> = drawn[1..3].iter().cloned().collect();
    let all_hw: BTreeSet<Tableau> = highest_weights(&shape, 4, None).unwrap().into_iter().collect();
    ensure!(drawn.iter().all(|t| all_hw.contains(t)), "a drawn tableau is not highest weight");
    let b = flag(&[1, 3]);
    let flagged = FlaggedSet::new(shape.clone(), &b, 3).unwrap();
    let kept: BTreeSet<Tableau> = drawn.iter().filter(|t| flagged.contains(t)).cloned().collect();
    ensure!(kept == red, "flag keeps {} drawn tableaux", kept.len());
    let flagged_hw: BTreeSet<Tableau> = highest_weights(&shape, 3, Some(&b)).unwrap().into_iter().collect();
    ensure!(flagged_hw == red, "flagged highest weights: {}", flagged_hw.len());
    within(start, Duration::from_secs(10))?;
    Ok(format!(
        "both paths give {}; six drawn tableaux are highest weight (of {} unflagged), two survive the flag",
        text.trim(),
        all_hw.len()
    ))
}

fn c4_logconcave_example() -> Outcome {
    let start = Instant::now();
    let args = ["logconcave", "--lambda", "3,1", "--nu", "2,2", "--flag", "2,4"];
    let j = keypos_json(&args)?;
    let (_, text) = keypos(&[&args[..], &["--text"]].concat())?;
    within(start, Duration::from_secs(10))?;
    let want = expansion(&[(&[3, 3, 1, 1], 1), (&[3, 4, 0, 1], 1), (&[4, 4], 1)]);
    ensure!(parse_expansion(&text)? == want, "got {}", text.trim());
    ensure!(j["key_positive"] == true, "positivity reported false");
    Ok(text.trim().to_string())
}

fn demazure_character_case(lambda: &Partition, w: &Permutation, n: usize) -> Result<(), String> {
    let words = all_reduced_words(w);
    let first = demazure_subset(lambda, words.iter().next().unwrap(), n as u32).map_err(|e| e.to_string())?;
    for word in &words {
        let other = demazure_subset(lambda, word, n as u32).map_err(|e| e.to_string())?;
        ensure!(other == first, "{lambda:?} {w}: word {word:?} gives a different set");
    }
    let alpha = act(w, &lambda.padded(n));
    ensure!(
        character_of(&first, n) == key_oracle(&alpha),
        "{lambda:?} {w}: character differs from kappa_{alpha:?}"
    );
    Ok(())
}

fn c5_character_theorem() -> Outcome {
    let start = Instant::now();
    let small: Vec<Partition> = (1..=5).flat_map(|s| Partition::all_of_size(s, 3, s)).collect();
    let mut cases = 0;
    for lambda in &small {
        for w in Permutation::all(3) {
            demazure_character_case(lambda, &w, 3)?;
            cases += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let pool: Vec<Partition> = (1..=5).flat_map(|s| Partition::all_of_size(s, 4, s)).collect();
    let s4 = Permutation::all(4);
    for _ in 0..20 {
        let lambda = pool.choose(&mut rng).unwrap();
        let w = s4.choose(&mut rng).unwrap();
        demazure_character_case(lambda, w, 4)?;
        cases += 1;
    }
    within(start, Duration::from_secs(300))?;
    Ok(format!("{cases} (lambda, w) cases, all reduced words agree"))
}

fn c6_yellow_subset() -> Outcome {
    let lambda = part(&[2, 1]);
    let shape = Shape::straight(lambda.clone());
    let k = TableauCrystal::new(3);
    let x: Members<Tableau> = FlaggedSet::new(shape.clone(), &flag(&[2, 3]), 3)
        .unwrap()
        .elements()
        .into_iter()
        .collect();
    ensure!(x.len() == 5, "{} elements", x.len());
    let r = axiom_report(&k, &x, true);
    for (name, c) in [
        ("extremal", &r.extremal),
        ("ideal", &r.ideal),
        ("principal", &r.principal),
        ("extension", &r.extension),
        ("gluing", &r.gluing),
    ] {
        ensure!(c.passed, "{name} failed: {}", c.to_json());
    }
    let g = greedy_lowest(&k, &x, &superstandard(&shape));
    let extremal_weights: Vec<Composition> = x.iter().filter(|t| k.is_extremal(t)).map(|t| k.weight(t)).collect();
    let lowest = k.weight(&g.lowest);
    ensure!(
        extremal_weights.iter().all(|w| dominance_leq(&lowest, w)),
        "greedy weight {lowest:?} is not the dominance minimum"
    );
    ensure!(character_of(&x, 3) == key_oracle(&lowest.0), "character is not kappa_{lowest:?}");
    ensure!(x == demazure_subset(&lambda, &[1, 2], 3).unwrap(), "set differs from B_{{s1 s2}}(2,1)");
    Ok(format!("5 elements, all axioms hold, lowest weight {:?} = s1 s2 (2,1,0)", lowest.0))
}

fn c7_greedy_trace() -> Outcome {
    let shape = Shape::straight(part(&[2, 1, 1]));
    let k = TableauCrystal::new(5);
    let x: Members<Tableau> = FlaggedSet::new(shape.clone(), &flag(&[2, 2, 5]), 5)
        .unwrap()
        .elements()
        .into_iter()
        .collect();
    let top = superstandard(&shape);
    let g = greedy_lowest(&k, &x, &top);
    let notation = g.chain.notation();
    ensure!(notation == "f_1^* f_4^* f_3^*", "chain {notation}");
    let weights: Vec<Vec<u32>> = g.steps.iter().map(|s| k.weight(&s.element).0).collect();
    ensure!(weights.contains(&vec![2, 1, 0, 0, 1]), "intermediate weights {weights:?}");
    ensure!(k.weight(&g.lowest).0 == vec![1, 2, 0, 0, 1], "lowest weight {:?}", k.weight(&g.lowest));
    ensure!(k.apply_chain(&top, &g.chain).unwrap() == g.lowest, "chain does not reach the lowest element");
    Ok(format!("{notation}, intermediate (2,1,0,0,1), lowest (1,2,0,0,1)"))
}

fn c8_wachs_sweep() -> Outcome {
    let start = Instant::now();
    let mut cases = 0usize;
    for size in 1..=8 {
        for lambda in Partition::all_of_size(size, 4, size) {
            let rows = lambda.len();
            let flags = Flag::all_bounded(rows, |i| i as u32 + 3);
            for mu in lambda.subpartitions() {
                let skew = SkewShape::new(lambda.clone(), mu.clone()).unwrap();
                let shape = Shape::skew(skew);
                for b in &flags {
                    let vars = b.max_bound() as usize;
                    let by_tableaux: IntPoly = flagged_schur(&shape, b, vars).unwrap();
                    let by_det: IntPoly = flagged_skew_schur_det(&lambda, &mu, b, vars).unwrap();
                    ensure!(by_tableaux == by_det, "lambda {lambda:?} mu {mu:?} flag {b:?}");
                    cases += 1;
                }
            }
        }
    }
    within(start, Duration::from_secs(300))?;
    Ok(format!("{cases} (lambda, mu, flag) cases agree"))
}

fn strict_partitions(max_size: u32, max_rows: usize) -> Vec<Partition> {
    (1..=max_size)
        .flat_map(|s| Partition::all_of_size(s, max_rows, s))
        .filter(|p| p.is_strict())
        .collect()
}

fn shuffle_checks(k: &TableauCrystal, x: &Members<Tableau>) -> Result<usize, String> {
    for (name, c) in [
        ("extremal", check_extremal(k, x)),
        ("ideal", check_ideal_decomposed(k, x)),
        ("extension", check_extension(k, x)),
        ("gluing", check_gluing(k, x)),
    ] {
        ensure!(c.passed, "{name}: {}", c.to_json());
    }
    let parts = decompose(k, x);
    ensure!(parts.iter().all(ComponentKey::valid), "a component is not a Demazure crystal");
    let mut keys = Poly::new();
    for c in &parts {
        for (e, v) in key_oracle(&c.alpha.0) {
            add_term(&mut keys, e, v);
        }
    }
    ensure!(keys == character_of(x, k.rank()), "sum of keys differs from the character");
    Ok(parts.len())
}

fn c9_shuffle_sweep() -> Outcome {
    let mut candidates = Vec::new();
    let strict = strict_partitions(9, 3);
    for lambda in &strict {
        for nu in &strict {
            if lambda.size() + nu.size() > 10 {
                continue;
            }
            let rows = lambda.len().max(nu.len());
            for b in Flag::all_bounded(rows, |i| (i as u32 + 2).min(4)) {
                candidates.push((lambda.clone(), nu.clone(), b));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    candidates.shuffle(&mut rng);
    let mut done = 0;
    let mut components = 0;
    for (lambda, nu, b) in candidates {
        if done == 25 {
            break;
        }
        let shape = Shape::shuffle(SkewShape::straight(lambda.clone()), SkewShape::straight(nu.clone()));
        let n = b.max_bound();
        let x: Members<Tableau> = FlaggedSet::new(shape, &b, n).unwrap().elements().into_iter().collect();
        if x.len() < 10 || x.len() > 3000 {
            continue;
        }
        components += shuffle_checks(&TableauCrystal::new(n), &x)
            .map_err(|e| format!("lambda {lambda:?} nu {nu:?} flag {b:?}: {e}"))?;
        done += 1;
    }
    ensure!(done == 25, "only {done} usable instances");

    // Nonstrict data from the introduction: some immanant has a negative key coefficient.
    let (lambda, mu, b) = (part(&[7, 7, 7, 5]), part(&[6, 4, 3, 2]), flag(&[1, 2, 2, 3]));
    let negative: Vec<TLDiagram> = tl_basis(4)
        .into_iter()
        .filter(|tau| !immanant_key_expansion(&lambda, &mu, &b, tau, 3).unwrap().is_key_positive())
        .collect();
    ensure!(!negative.is_empty(), "every immanant of the nonstrict data is key positive");
    Ok(format!(
        "25 strict instances ({components} components) pass; nonstrict data: {} of 14 immanants have negative key coefficients",
        negative.len()
    ))
}

fn c10_temperley_lieb() -> Outcome {
    let start = Instant::now();
    let gen = |i, n| TLElement::diagram(TLDiagram::generator(i, n));
    for n in 2..=5 {
        for i in 1..n {
            let mut twice = TLElement::zero(n);
            twice.add(TLDiagram::generator(i, n), 2.into());
            ensure!(gen(i, n).mul(&gen(i, n)) == twice, "e_{i}^2 != 2 e_{i} at n={n}");
            for j in 1..n {
                let (ei, ej) = (gen(i, n), gen(j, n));
                if i.abs_diff(j) == 1 {
                    ensure!(ei.mul(&ej).mul(&ei) == ei, "e_{i} e_{j} e_{i} != e_{i} at n={n}");
                } else if i.abs_diff(j) > 1 {
                    ensure!(ei.mul(&ej) == ej.mul(&ei), "e_{i} e_{j} != e_{j} e_{i} at n={n}");
                }
            }
        }
    }
    let mut words = 0;
    for w in Permutation::all(5) {
        let expected = project_perm(&w);
        for word in all_reduced_words(&w) {
            ensure!(project_perm_along(&w, &word) == expected, "{w}: word {word:?} projects differently");
            words += 1;
        }
    }
    let n = 4;
    let m: Vec<Vec<IntPoly>> = (0..n)
        .map(|i| (0..n).map(|j| IntPoly::var(i * n + j + 1, n * n)).collect())
        .collect();
    let subsets: Vec<Vec<usize>> = (0u32..1 << n)
        .map(|mask| (1..=n).filter(|&i| mask & (1 << (i - 1)) != 0).collect())
        .collect();
    let complement = |s: &[usize]| (1..=n).filter(|x| !s.contains(x)).collect::<Vec<_>>();
    let mut pairs = 0;
    for rows in &subsets {
        for cols in subsets.iter().filter(|c| c.len() == rows.len()) {
            let lhs = minor(&m, rows, cols)
                .unwrap()
                .checked_mul(&minor(&m, &complement(rows), &complement(cols)).unwrap())
                .unwrap();
            let mut rhs = IntPoly::zero(n * n);
            for tau in theta_set(rows, cols, n).unwrap() {
                rhs = rhs.checked_add(&tl_immanant(&tau, &m).unwrap()).unwrap();
            }
            ensure!(lhs == rhs, "complementary minors differ from the theta sum at I={rows:?} J={cols:?}");
            pairs += 1;
        }
    }
    within(start, Duration::from_secs(120))?;
    Ok(format!("relations to n=5; {words} reduced words of S5; {pairs} (I,J) pairs at n=4"))
}

// ---------------------------------------------------------------------------
// Property suites.

fn check_element(k: &TableauCrystal, x: &Tableau) -> Result<(), String> {
    let n = k.rank();
    let wt = k.weight(x).0;
    for i in 1..n {
        if let Some(y) = k.lower(x, i) {
            ensure!(y.is_semistandard(), "f_{i} left semistandard tableaux at {x:?}");
            ensure!(k.raise(&y, i).as_ref() == Some(x), "e_{i} f_{i} != id at {x:?}");
            let mut step = wt.clone();
            step[i - 1] -= 1;
            step[i] += 1;
            ensure!(k.weight(&y).0 == step, "f_{i} weight step at {x:?}");
            for j in (1..n).filter(|&j| j != i) {
                let before: BTreeSet<usize> = unpaired(x, j as u32).0.into_iter().collect();
                let after: BTreeSet<usize> = unpaired(&y, j as u32).0.into_iter().collect();
                ensure!(before.is_subset(&after), "f_{i} removed an unpaired {j} at {x:?}");
            }
        }
        if let Some(y) = k.raise(x, i) {
            ensure!(k.lower(&y, i).as_ref() == Some(x), "f_{i} e_{i} != id at {x:?}");
        }
        let (phi, eps) = (k.phi(x, i) as i64, k.epsilon(x, i) as i64);
        ensure!(phi - eps == wt[i - 1] as i64 - wt[i] as i64, "string length at {x:?}, i={i}");
    }
    if k.is_extremal(x) {
        check_extremal_element(k, x)?;
    }
    Ok(())
}

fn check_extremal_element(k: &TableauCrystal, x: &Tableau) -> Result<(), String> {
    let n = k.rank();
    for i in 1..n {
        if k.phi(x, i) > 0 {
            let moved = k.weight(&k.lower_star(x, i)).0;
            ensure!(moved == act(&Permutation::simple(i, n), &k.weight(x).0), "f_{i}^* is not s_{i} on the content of {x:?}");
        }
        for j in 1..n {
            let d = i.abs_diff(j);
            if d > 1 {
                ensure!(k.apply_stars(x, &[j, i]) == k.apply_stars(x, &[i, j]), "f_{i}^* f_{j}^* at {x:?}");
            } else if d == 1 {
                ensure!(k.apply_stars(x, &[i, j, i]) == k.apply_stars(x, &[j, i, j]), "braid {i},{j} at {x:?}");
            }
        }
        if k.raise(x, i).is_none() {
            for j in [i.wrapping_sub(1), i + 1] {
                if (1..n).contains(&j) && k.raise(x, j).is_none() {
                    let y = k.apply_stars(x, &[i, j]);
                    ensure!(k.raise(&y, i).is_none(), "e_{i} f_{j}^* f_{i}^* != 0 at {x:?}");
                }
            }
        }
    }
    Ok(())
}

/// Every straight, skew and shuffle shape with at most `cells` cells and at most
/// `rows` rows per constituent.
fn small_shapes(cells: u32, rows: usize) -> Vec<Arc<Shape>> {
    let mut skews = Vec::new();
    for size in 1..=cells + 2 {
        for lambda in Partition::all_of_size(size, rows, size) {
            for mu in lambda.subpartitions() {
                let s = SkewShape::new(lambda.clone(), mu).unwrap();
                if s.size() >= 1 && s.size() <= cells {
                    skews.push(s);
                }
            }
        }
    }
    let mut out: Vec<Arc<Shape>> = skews.iter().cloned().map(Shape::skew).collect();
    let straight: Vec<&SkewShape> = skews.iter().filter(|s| s.inner().is_empty()).collect();
    for a in &straight {
        for b in &straight {
            if a.size() + b.size() <= cells {
                out.push(Shape::shuffle((*a).clone(), (*b).clone()));
            }
        }
    }
    out
}

/// Single `e_i`/`f_i` steps from the highest weight element, skipping moves that do not apply.
fn random_element(shape: &Arc<Shape>, k: &TableauCrystal, moves: &[(bool, usize)]) -> Tableau {
    let mut cur = superstandard(shape);
    for &(up, i) in moves {
        let i = 1 + i % (k.rank() - 1);
        let next = if up { k.raise(&cur, i) } else { k.lower(&cur, i) };
        cur = next.unwrap_or(cur);
    }
    cur
}

fn partition_strategy(max_parts: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u32..=3, 1..=max_parts).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

fn poly_strategy() -> impl Strategy<Value = IntPoly> {
    let term = (prop::collection::vec(0u32..=3, 4), -4i64..=4);
    prop::collection::vec(term, 1..8).prop_map(|terms| {
        let mut p = IntPoly::zero(4);
        for (mut e, c) in terms {
            while e.iter().sum::<u32>() > 6 {
                let j = e.iter().position(|&x| x > 0).unwrap();
                e[j] -= 1;
            }
            p.add_term(e, c.into());
        }
        p
    })
}

fn runner() -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases: 200,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

fn fail(e: String) -> TestCaseError {
    TestCaseError::fail(e)
}

fn poly_properties(p: &IntPoly) -> Result<(), String> {
    let oracle = from_lib(p);
    for i in 1..4 {
        let once = p.demazure_op(i);
        ensure!(from_lib(&once) == pi(&oracle, i), "pi_{i} differs from the oracle on {}", p.pretty());
        ensure!(once.demazure_op(i) == once, "pi_{i} is not idempotent on {}", p.pretty());
        for j in 1..4 {
            let (a, b) = if i.abs_diff(j) == 1 {
                (
                    p.demazure_op(i).demazure_op(j).demazure_op(i),
                    p.demazure_op(j).demazure_op(i).demazure_op(j),
                )
            } else {
                (p.demazure_op(i).demazure_op(j), p.demazure_op(j).demazure_op(i))
            };
            ensure!(a == b, "pi braid relation {i},{j} fails on {}", p.pretty());
        }
    }
    let e = key_expand(p).map_err(|e| e.to_string())?;
    ensure!(e.reconstruct(4).unwrap() == *p, "key round trip fails on {}", p.pretty());
    Ok(())
}

fn c11_properties() -> Outcome {
    // exhaustive crystal instances
    let mut elements = 0usize;
    for shape in small_shapes(8, 3) {
        let n = if shape.size() <= 6 { 4 } else { 3 };
        let k = TableauCrystal::new(n);
        for t in enumerate_tableaux(&shape, n, None).unwrap() {
            check_element(&k, &t)?;
            elements += 1;
        }
    }
    // flagged shuffle sets, where the unpaired-subset lemma lives
    for shape in small_shapes(6, 2).into_iter().filter(|s| s.is_shuffle()) {
        for b in Flag::all_bounded(2, |i| i as u32 + 3) {
            let bounds = RowBounds::from_flag(&shape, &b).unwrap();
            let k = TableauCrystal::new(4);
            for t in enumerate_with_bounds(&shape, 4, &bounds) {
                check_element(&k, &t)?;
            }
        }
    }
    // random crystal instances
    let crystal_case = (partition_strategy(3), prop::option::of(partition_strategy(2)), 3u32..=5, prop::collection::vec((any::<bool>(), 0usize..8), 0..30));
    runner()
        .run(&crystal_case, |(lambda, nu, n, moves)| {
            let shape = match nu {
                Some(nu) => Shape::shuffle(SkewShape::straight(lambda), SkewShape::straight(nu)),
                None => Shape::straight(lambda),
            };
            let k = TableauCrystal::new(n.max(shape.flag_rows() as u32));
            check_element(&k, &random_element(&shape, &k, &moves)).map_err(fail)?;
            let order: Vec<usize> = moves.iter().map(|&(_, i)| 1 + i % (k.rank() - 1)).collect();
            check_extremal_element(&k, &k.apply_stars(&superstandard(&shape), &order)).map_err(fail)
        })
        .map_err(|e| format!("random crystal case: {e}"))?;

    // divided differences and keys, exhaustive on monomials of degree <= 4
    let mut monomials = 0;
    for d in 0..=4 {
        for e in Composition::all_of_size(d, 4, d) {
            poly_properties(&IntPoly::monomial(e.0, 1.into()))?;
            monomials += 1;
        }
    }
    runner()
        .run(&poly_strategy(), |p| poly_properties(&p).map_err(fail))
        .map_err(|e| format!("random polynomial: {e}"))?;
    let mut first = KeyCache::<keypos::Int>::with_choice(4, AscentChoice::First);
    let mut last = KeyCache::<keypos::Int>::with_choice(4, AscentChoice::Last);
    for d in 0..=6 {
        for alpha in Composition::all_of_size(d, 4, d) {
            ensure!(first.get(&alpha).unwrap() == last.get(&alpha).unwrap(), "ascent choice matters for {alpha:?}");
        }
    }
    Ok(format!(
        "{elements} tableaux exhaustively, {monomials} monomials, 200 random crystal and 200 random polynomial cases"
    ))
}

fn nonstrict_shuffle_report() -> String {
    // (7,7)/(6,3) and (7,5)/(4,2) are the two halves of the nonstrict data.
    let shape = Shape::shuffle(
        SkewShape::new(part(&[7, 7]), part(&[6, 3])).unwrap(),
        SkewShape::new(part(&[7, 5]), part(&[4, 2])).unwrap(),
    );
    let bounds = RowBounds::interlaced(&shape, &flag(&[1, 2]), &flag(&[2, 3])).unwrap();
    let x: Members<Tableau> = enumerate_with_bounds(&shape, 3, &bounds).into_iter().collect();
    match shuffle_checks(&TableauCrystal::new(3), &x) {
        Ok(c) => format!("nonstrict shuffle set ({} elements, {c} components) passes every check", x.len()),
        Err(e) => format!("nonstrict shuffle set fails: {e}"),
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("nonstrict immanant counterexample", c1_nonstrict_counterexample),
        ("strict immanant", c2_strict_case),
        ("flagged product example", c3_product_example),
        ("log-concavity example", c4_logconcave_example),
        ("Demazure character theorem", c5_character_theorem),
        ("flag (2,3) subset end to end", c6_yellow_subset),
        ("greedy lowest weight trace", c7_greedy_trace),
        ("Wachs identity sweep", c8_wachs_sweep),
        ("Demazure axioms on flagged shuffle sets", c9_shuffle_sweep),
        ("Temperley-Lieb algebra", c10_temperley_lieb),
        ("property suites", c11_properties),
    ];
    let mut failed = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS {secs:>8.3}s  {name}: {detail}", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {secs:>8.3}s  {name}: {why}", n + 1);
            }
        }
    }
    println!("note: {}", nonstrict_shuffle_report());
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! Acceptance battery: one line per criterion, nonzero exit if any gating criterion fails.

use std::time::{Duration, Instant};

use monoidforge::automata::{verify_biautomatic, DEFAULT_STATE_CAP};
use monoidforge::chinese::{chinese_t, ChineseStaircase};
use monoidforge::hypoplactic::{column_decompose, hypoplactic_t, is_quasi_ribbon, left_insert_qr, right_insert_qr};
use monoidforge::monoid;
use monoidforge::sylvester::{
    left_multiply_nf, m_bound, right_multiply_nf, sylvester_normal_form, sylvester_system, Bst,
};
use monoidforge::words::{alphabet, lex_compare, words_up_to};
use monoidforge::{Letter, MonoidId, MonoidKind, Strategy, Symbol, Word};
use rand::{Rng, SeedableRng};

const CLASS_FUEL: usize = 1_000_000;
const STRATEGIES: [Strategy; 5] = [
    Strategy::Leftmost,
    Strategy::Rightmost,
    Strategy::Random(1),
    Strategy::Random(2),
    Strategy::Random(0x5eed),
];

struct Outcome {
    pass: bool,
    detail: String,
}

fn ok(detail: impl Into<String>) -> Outcome {
    Outcome {
        pass: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        pass: false,
        detail: detail.into(),
    }
}

fn w(s: &str) -> Word {
    Word::parse(s, 9).unwrap()
}

fn id(kind: MonoidKind, n: u32) -> MonoidId {
    MonoidId::new(kind, n).unwrap()
}

/// The unique normal-form word in the congruence class, found by closure.
fn class_normal_form(m: MonoidId, x: &Word) -> Result<Word, String> {
    let class = monoid::presentation(m)
        .congruence_class(x, CLASS_FUEL)
        .map_err(|e| e.to_string())?;
    let normal: Vec<&Word> = class.iter().filter(|y| monoid::is_normal_form(m, y)).collect();
    match normal.as_slice() {
        [one] => Ok((*one).clone()),
        _ => Err(format!("class of {x} holds {} normal forms", normal.len())),
    }
}

fn fig2_tree() -> Bst {
    let l = |v| Letter::of(v);
    Bst::node(
        l(4),
        Bst::node(
            l(1),
            Bst::leaf(l(1)),
            Bst::node(l(3), Bst::leaf(l(2)), Bst::leaf(l(4))),
        ),
        Bst::node(l(5), Bst::leaf(l(5)), Bst::leaf(l(6))),
    )
}

fn c1() -> Outcome {
    let nf = sylvester_normal_form(&w("265415314"), 9).unwrap();
    let tree = Bst::from_word(&w("265415314"));
    if nf != w("124315654") {
        return fail(format!("normal form {nf}"));
    }
    if tree != fig2_tree() {
        return fail("tree shape differs from the worked example");
    }
    ok("NF = 124315654, tree matches")
}

fn c2() -> Outcome {
    let word = w("111212543656787");
    let cols: Vec<String> = column_decompose(&word)
        .iter()
        .map(|c| Letter::render_word(c.letters(), 9))
        .collect();
    let joined = cols.join("|");
    if !is_quasi_ribbon(&word) {
        return fail("not quasi-ribbon");
    }
    if joined != "1|1|1|21|2|543|65|6|7|87" {
        return fail(format!("columns {joined}"));
    }
    ok(format!("columns {joined}"))
}

fn sweep(check_lex: bool) -> Outcome {
    let mut words = 0usize;
    for kind in MonoidKind::ALL {
        if check_lex && kind == MonoidKind::Chinese {
            continue;
        }
        for n in [2u32, 3] {
            let m = id(kind, n);
            let pres = monoid::presentation(m);
            for x in words_up_to(m.rank, 7) {
                words += 1;
                let class = match pres.congruence_class(&x, CLASS_FUEL) {
                    Ok(c) => c,
                    Err(e) => return fail(e.to_string()),
                };
                let nf = monoid::normal_form(m, &x).unwrap();
                if check_lex {
                    if let Some(y) = class.iter().find(|y| lex_compare(&nf, y).is_gt()) {
                        return fail(format!("{kind} n={n}: NF({x}) = {nf} is above {y}"));
                    }
                    continue;
                }
                let normal: Vec<&Word> = class.iter().filter(|y| monoid::is_normal_form(m, y)).collect();
                if normal != [&nf] {
                    return fail(format!("{kind} n={n}: class of {x} has normal forms {normal:?}, insertion gives {nf}"));
                }
                for s in STRATEGIES {
                    let r = monoid::rewriting_normal_form(m, &x, s).unwrap();
                    if r != nf {
                        return fail(format!("{kind} n={n}: rewriting {x} with {s:?} gives {r}, expected {nf}"));
                    }
                }
            }
        }
    }
    ok(format!("{words} words"))
}

fn c5() -> Outcome {
    let mut pairs = 0;
    for n in [2u8, 3, 4] {
        let sys = chinese_t(n);
        let report = sys.check_local_confluence(0).unwrap();
        if !report.is_confluent() {
            return fail(format!("n={n}: {} unresolved critical pairs", report.violations.len()));
        }
        if report.critical_pairs == 0 {
            return fail(format!("n={n}: no critical pairs enumerated"));
        }
        if !sys.rules_decrease_lex() {
            return fail(format!("n={n}: some rule does not decrease"));
        }
        pairs += report.critical_pairs;
    }
    ok(format!("{pairs} critical pairs resolved, all rules decreasing"))
}

fn c6() -> Outcome {
    let mut checked = 0;
    for n in 1u8..=3 {
        let bound = (2 * n as usize).max(4) + 2;
        let report = hypoplactic_t(n).unwrap().check_peaks(bound).unwrap();
        if !report.is_confluent() {
            return fail(format!("hypoplactic n={n}: peak at {:?}", report.violations[0].peak));
        }
        checked += report.words_checked;
        let report = sylvester_system(n).check_peaks(7).unwrap();
        if !report.is_confluent() {
            return fail(format!("sylvester n={n}: peak at {:?}", report.violations[0].peak));
        }
        checked += report.words_checked;
    }
    ok(format!("{checked} words swept"))
}

fn c7() -> Outcome {
    let mut families = 0;
    for kind in MonoidKind::ALL {
        for n in [2u32, 3] {
            let report = match verify_biautomatic(id(kind, n), 5, DEFAULT_STATE_CAP) {
                Ok(r) => r,
                Err(e) => return fail(format!("{kind} n={n}: {e}")),
            };
            if let Some((family, c)) = report.first_counterexample() {
                return fail(format!("{kind} n={n} {family}: {} pair ({}, {})", c.kind, c.u, c.v));
            }
            if !report.pass {
                return fail(format!("{kind} n={n}: report failed"));
            }
            families += report.families.len();
        }
    }
    ok(format!("{families} synchronized automata exact on |u| ≤ 5"))
}

fn c8a() -> Outcome {
    let mut checked = 0;
    for kind in MonoidKind::ALL {
        for n in 1u32..=3 {
            let m = id(kind, n);
            for x in words_up_to(m.rank, 6).filter(|x| monoid::is_normal_form(m, x)) {
                for gamma in alphabet(m.rank) {
                    let (right, left) = match kind {
                        MonoidKind::Chinese => {
                            let s = ChineseStaircase::from_staircase_word(&x, m.rank).unwrap();
                            (s.right_insert(gamma).to_word(), s.left_insert(gamma).to_word())
                        }
                        MonoidKind::Hypoplactic => {
                            (right_insert_qr(&x, gamma).unwrap(), left_insert_qr(gamma, &x).unwrap())
                        }
                        MonoidKind::Sylvester => (
                            right_multiply_nf(&x, gamma).unwrap().result,
                            left_multiply_nf(gamma, &x).unwrap().result,
                        ),
                    };
                    let want_right = class_normal_form(m, &x.append(gamma));
                    let want_left = class_normal_form(m, &x.prepend(gamma));
                    if want_right.as_ref() != Ok(&right) {
                        return fail(format!("{kind} n={n}: {x}·{gamma} gave {right}, oracle {want_right:?}"));
                    }
                    if want_left.as_ref() != Ok(&left) {
                        return fail(format!("{kind} n={n}: {gamma}·{x} gave {left}, oracle {want_left:?}"));
                    }
                    checked += 2;
                }
            }
        }
    }
    ok(format!("{checked} products agree with the class oracle"))
}

fn c8b() -> Outcome {
    let mut worst: Option<(usize, usize, String)> = None;
    for n in 1u32..=3 {
        let m = id(MonoidKind::Sylvester, n);
        let bound = m_bound(m.rank);
        for x in words_up_to(m.rank, 6).filter(|x| monoid::is_normal_form(m, x)) {
            for gamma in alphabet(m.rank) {
                let moved = right_multiply_nf(&x, gamma).unwrap().migrated_right;
                if moved > bound && worst.as_ref().is_none_or(|(k, _, _)| moved - bound > *k) {
                    worst = Some((moved - bound, moved, format!("n={n} w={x} γ={gamma} moves {moved} > M={bound}")));
                }
            }
        }
    }
    match worst {
        None => ok("every migration within M"),
        Some((_, _, msg)) => fail(msg),
    }
}

fn c9() -> Outcome {
    let mut checked = 0;
    for kind in MonoidKind::ALL {
        for n in [2u32, 3] {
            let m = id(kind, n);
            for x in words_up_to(m.rank, 7) {
                let nf = monoid::normal_form(m, &x).unwrap();
                if nf.len() != x.len() || nf.content(m.rank) != x.content(m.rank) {
                    return fail(format!("{kind} n={n}: {x} -> {nf}"));
                }
                checked += 1;
            }
        }
    }
    ok(format!("{checked} normal forms conserve content"))
}

/// Informational: growth of normal-form time with word length.
fn smoke() -> String {
    let mut rng = rand::rngs::StdRng::seed_from_u64(2024);
    let mut parts = Vec::new();
    for kind in MonoidKind::ALL {
        let m = id(kind, 8);
        let mut times = Vec::new();
        for len in [100usize, 1_000, 10_000] {
            let x = Word::from_letters((0..len).map(|_| Letter::of(rng.gen_range(1..=8))));
            let start = Instant::now();
            let reps = (100_000 / len).max(1);
            for _ in 0..reps {
                std::hint::black_box(monoid::normal_form(m, &x).unwrap());
            }
            times.push(start.elapsed().as_secs_f64() / reps as f64);
        }
        let slope = (times[2] / times[0]).ln() / 100f64.ln();
        parts.push(format!("{kind} exponent≈{slope:.2}"));
    }
    parts.join(", ")
}

type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("1", "sylvester worked example", c1),
        ("2", "quasi-ribbon worked example", c2),
        ("3", "cross-section sweeps n∈{2,3}, |w|≤7", || sweep(false)),
        ("4", "lex-minimal normal forms n∈{2,3}, |w|≤7", || sweep(true)),
        ("5", "D-system critical pairs n∈{2,3,4}", c5),
        ("6", "one-step rejoin sweeps", c6),
        ("7", "biautomatic structures n∈{2,3}, |u|≤5", c7),
        ("8a", "insertion algorithms vs class oracle, |w|≤6, n≤3", c8a),
        ("8b", "sylvester right multiplication migrates ≤ M letters", c8b),
        ("9", "length and content conservation", c9),
    ];
    let mut failed = Vec::new();
    let mut total = Duration::ZERO;
    for (tag, name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        total += elapsed;
        println!(
            "criterion {tag:<3} {} {name} (tolerance: exact) [{:.2}s] {}",
            if outcome.pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            outcome.detail
        );
        if !outcome.pass {
            failed.push(tag);
        }
    }
    println!("info          runtime growth (non-gating): {}", smoke());
    println!("total {:.1}s; failed: {}", total.as_secs_f64(), if failed.is_empty() { "none".to_string() } else { failed.join(", ") });
    if !failed.is_empty() {
        std::process::exit(1);
    }
}

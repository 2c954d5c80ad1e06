//! Acceptance criteria, one line each. Run with `cargo test --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use metabelian::autos::{
    apply_nested, aut_commutator, class2_conjugator, compose_gen_inner, flatten, invert_gen_inner, is_inner, AutoSpec,
    GenInnerData, NestedGenInnerData,
};
use metabelian::group::{enumerate_basics, is_basic_shape};
use metabelian::magnus::{kernel_selfcheck, oracle_equal};
use metabelian::normality::{
    enumerate_deltas, lemma32_direct, lemma32_independent, lemma32_rewrite, synthesize_gen_inner, ExponentAssignment,
};
use metabelian::{random, Element, GroupParams, Word};
use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

const GOLDEN_LIMIT: Duration = Duration::from_secs(5);
const ORACLE_LIMIT: Duration = Duration::from_secs(30);
const SYNTH_LIMIT: Duration = Duration::from_secs(60);

const ORACLE_PAIRS: usize = 1000;
const COMPOSITIONS: usize = 200;
const INVERSIONS: usize = 100;
const FLATTENINGS: usize = 200;
const SYNTHESES: usize = 100;
const QUADRUPLES: usize = 50;
const IA_SPECS: usize = 20;
const ASSIGNMENTS: usize = 100;
const CLASS2_SAMPLES: usize = 100;

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: impl Into<String>) -> Verdict {
    Verdict { passed, detail: detail.into() }
}

fn p(d: usize, k: usize) -> GroupParams {
    GroupParams::new(d, k).unwrap()
}

fn timed(limit: Duration, v: Verdict, start: Instant) -> Verdict {
    let elapsed = start.elapsed();
    let in_time = elapsed < limit;
    verdict(v.passed && in_time, format!("{}; {:.2}s (limit {}s)", v.detail, elapsed.as_secs_f64(), limit.as_secs()))
}

fn golden() -> Verdict {
    let start = Instant::now();
    let params = p(3, 5);
    let el = |s: &str| Element::parse(s, params).unwrap();
    let f = AutoSpec::parse(params, &["a [a,b]", "b", "c"]).unwrap();
    let g = AutoSpec::parse(params, &["a", "b [b,c]", "c"]).unwrap();
    let h = AutoSpec::parse(params, &["a", "b", "c [c,a]"]).unwrap();
    let fg = aut_commutator(&f, &g).unwrap();
    let fh = aut_commutator(&f, &h).unwrap();
    let c = el("c");
    let checks = [
        fg == AutoSpec::parse(params, &["a [c^-1,b,a]", "b", "c"]).unwrap(),
        fh.apply(&c).unwrap() == el("c [a,b^-1,c]"),
        fh.compose(&fg).unwrap().apply(&c).unwrap() == el("c [a,b^-1,c]"),
        fg.compose(&fh).unwrap().apply(&c).unwrap() == el("c [a,b^-1,c] [c,b,a,b,c]"),
        !aut_commutator(&fg, &fh).unwrap().is_identity(),
    ];
    let ok = checks.iter().filter(|&&x| x).count();
    timed(GOLDEN_LIMIT, verdict(ok == checks.len(), format!("{ok}/{} golden equalities", checks.len())), start)
}

/// A second word for `w1`: unrelated, or `w1` with a relator spliced in.
fn partner(rng: &mut ChaCha8Rng, w1: &Word, params: GroupParams) -> Word {
    if rng.gen_bool(0.4) {
        random::word(rng, params.rank, 20)
    } else {
        random::spliced(rng, w1, params)
    }
}

fn oracle_agreement() -> Verdict {
    let start = Instant::now();
    let mut rng = random::seeded(2);
    let (mut pairs, mut equal, mut bad) = (0, 0, 0);
    let mut kernel_ok = true;
    for d in [2, 3] {
        for k in 2..=5 {
            let params = p(d, k);
            kernel_ok &= kernel_selfcheck(params).unwrap().passed();
            for _ in 0..ORACLE_PAIRS {
                let w1 = random::word(&mut rng, d, 20);
                let w2 = partner(&mut rng, &w1, params);
                let collected = Element::collect(&w1, params).unwrap() == Element::collect(&w2, params).unwrap();
                pairs += 1;
                equal += usize::from(collected);
                bad += usize::from(collected != oracle_equal(&w1, &w2, params).unwrap());
            }
        }
    }
    let v = verdict(
        bad == 0 && kernel_ok,
        format!("{pairs} pairs ({equal} equal), {bad} disagreements, kernel self-check {}", if kernel_ok { "ok" } else { "failed" }),
    );
    timed(ORACLE_LIMIT, v, start)
}

fn small_params(rng: &mut ChaCha8Rng) -> GroupParams {
    random::params_in(rng, &[2, 3], &[2, 3, 4, 5])
}

fn composition() -> Verdict {
    let mut rng = random::seeded(3);
    let ok = (0..COMPOSITIONS)
        .filter(|_| {
            let params = small_params(&mut rng);
            let phi = random::gen_inner(&mut rng, params, 3, 4);
            let psi = random::gen_inner(&mut rng, params, 3, 4);
            compose_gen_inner(&psi, &phi).unwrap().to_spec() == psi.to_spec().compose(&phi.to_spec()).unwrap()
        })
        .count();
    verdict(ok == COMPOSITIONS, format!("{ok}/{COMPOSITIONS}"))
}

fn inversion() -> Verdict {
    let mut rng = random::seeded(4);
    let ok = (0..INVERSIONS)
        .filter(|_| {
            let params = random::params_in(&mut rng, &[2, 3], &[2, 3, 4, 5, 6]);
            let max_pairs = if params.class == 6 { 2 } else { 3 };
            let phi = random::gen_inner(&mut rng, params, max_pairs, 4);
            let inv = invert_gen_inner(&phi);
            compose_gen_inner(&inv, &phi).unwrap().to_spec().is_identity()
                && compose_gen_inner(&phi, &inv).unwrap().to_spec().is_identity()
        })
        .count();
    verdict(ok == INVERSIONS, format!("{ok}/{INVERSIONS} (class up to 6)"))
}

fn flattening() -> Verdict {
    let mut rng = random::seeded(5);
    let ok = (0..FLATTENINGS)
        .filter(|_| {
            let params = small_params(&mut rng);
            let nested = random::nested(&mut rng, params, 3, 4);
            let flat = flatten(&nested);
            let x = random::element(&mut rng, params, 8);
            let mut probes = Element::generators(params);
            probes.push(x);
            probes.iter().all(|a| flat.apply(a).unwrap() == apply_nested(&nested, a).unwrap())
        })
        .count();
    verdict(ok == FLATTENINGS, format!("{ok}/{FLATTENINGS}"))
}

fn synthesis() -> Verdict {
    let start = Instant::now();
    let mut rng = random::seeded(6);
    let ok = (0..SYNTHESES)
        .filter(|_| {
            let params = small_params(&mut rng);
            let spec = random::gen_inner(&mut rng, params, 3, 4).to_spec();
            synthesize_gen_inner(&spec).unwrap().data().is_some_and(|g| g.to_spec() == spec)
        })
        .count();
    let f = AutoSpec::parse(p(3, 5), &["a [a,b]", "b", "c"]).unwrap();
    let refused = synthesize_gen_inner(&f).unwrap().refusal().is_some_and(|r| r.verify());
    let v = verdict(
        ok == SYNTHESES && refused,
        format!("{ok}/{SYNTHESES} recovered; a -> a[a,b] {}", if refused { "refused with a valid certificate" } else { "NOT refused" }),
    );
    timed(SYNTH_LIMIT, v, start)
}

fn metabelian_gen_inner() -> Verdict {
    let mut rng = random::seeded(7);
    let ok = (0..QUADRUPLES)
        .filter(|_| {
            let params = small_params(&mut rng);
            let s: Vec<AutoSpec> = (0..4).map(|_| random::gen_inner(&mut rng, params, 2, 3).to_spec()).collect();
            let c1 = aut_commutator(&s[0], &s[1]).unwrap();
            let c2 = aut_commutator(&s[2], &s[3]).unwrap();
            aut_commutator(&c1, &c2).unwrap().is_identity()
        })
        .count();
    verdict(ok == QUADRUPLES, format!("{ok}/{QUADRUPLES}"))
}

fn ia_nilpotency() -> Verdict {
    let mut rng = random::seeded(8);
    let mut trivial = true;
    for k in [3, 4] {
        let params = p(2, k);
        let specs: Vec<AutoSpec> = (0..IA_SPECS).map(|_| random::ia_spec(&mut rng, params)).collect();
        // every k-fold iterated commutator of consecutive specs, cyclically
        for start in 0..IA_SPECS {
            let mut acc = specs[start].clone();
            for j in 1..k {
                acc = aut_commutator(&acc, &specs[(start + j) % IA_SPECS]).unwrap();
            }
            trivial &= acc.is_identity();
        }
    }
    let params = p(3, 5);
    let f = AutoSpec::parse(params, &["a [a,b]", "b", "c"]).unwrap();
    let g = AutoSpec::parse(params, &["a", "b [b,c]", "c"]).unwrap();
    let h = AutoSpec::parse(params, &["a", "b", "c [c,a]"]).unwrap();
    let witness = !aut_commutator(&aut_commutator(&f, &g).unwrap(), &aut_commutator(&f, &h).unwrap()).unwrap().is_identity();
    verdict(
        trivial && witness,
        format!(
            "iterated commutators {}; IA at rank 3, class 5 {}",
            if trivial { "trivial" } else { "NOT trivial" },
            if witness { "not metabelian" } else { "metabelian?" }
        ),
    )
}

fn rewriting() -> Verdict {
    let mut rng = random::seeded(9);
    let (mut agree, mut total, mut injective, mut grids) = (0, 0, 0, 0);
    for d in [2, 3] {
        for k in [3, 4, 5] {
            let params = p(d, k);
            let deltas = enumerate_deltas(d, k - 2);
            for _ in 0..ASSIGNMENTS {
                let s = rng.gen_range(0..d);
                let eps: ExponentAssignment = (0..rng.gen_range(1..8))
                    .map(|_| {
                        let delta = deltas[rng.gen_range(0..deltas.len())].clone();
                        (rng.gen_range(0..d), delta, BigInt::from(rng.gen_range(-4..=4)))
                    })
                    .collect();
                total += 1;
                agree += usize::from(lemma32_rewrite(&eps, s, params).unwrap() == lemma32_direct(&eps, s, params).unwrap());
            }
            for s in 0..d {
                grids += 1;
                injective += usize::from(lemma32_independent(s, params).unwrap().injective);
            }
        }
    }
    verdict(agree == total && injective == grids, format!("{agree}/{total} rewrites agree; {injective}/{grids} maps injective"))
}

fn class_separation() -> Verdict {
    let mut rng = random::seeded(10);
    let ok = (0..CLASS2_SAMPLES)
        .filter(|_| {
            let params = random::params_in(&mut rng, &[2, 3], &[2]);
            let phi = random::gen_inner(&mut rng, params, 4, 5);
            let u = class2_conjugator(&phi).unwrap();
            phi.to_spec() == GenInnerData::conjugation(&u).to_spec()
        })
        .count();
    let params = p(2, 3);
    let a = Element::generator(params, 0);
    let spec = flatten(&NestedGenInnerData::new(params, [(vec![a.clone(), a], BigInt::from(1))]).unwrap()).to_spec();
    let target = AutoSpec::parse(params, &["a", "b [b,a,a]"]).unwrap();
    let separated = spec == target && is_inner(&target).unwrap().is_none();
    verdict(
        ok == CLASS2_SAMPLES && separated,
        format!("{ok}/{CLASS2_SAMPLES} class-2 maps are conjugations; x -> x[x,a,a] {}", if separated { "generalized inner, not inner" } else { "WRONG" }),
    )
}

fn binomial(n: usize, r: usize) -> usize {
    if r > n {
        return 0;
    }
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn basic_counts() -> Verdict {
    let mut bad = Vec::new();
    for d in 1..=3 {
        for w in 2..=6 {
            let listed = enumerate_basics(p(d, 6), w).unwrap().len();
            // all sequences in {0..d}^w with the basic shape
            let exhaustive = (0..d.pow(w as u32))
                .filter(|&n| {
                    let seq: Vec<usize> = (0..w).map(|j| n / d.pow(j as u32) % d).collect();
                    is_basic_shape(&seq)
                })
                .count();
            let formula = (w - 1) * binomial(d + w - 2, w);
            if listed != exhaustive || listed != formula {
                bad.push(format!("d={d} w={w}: {listed}/{exhaustive}/{formula}"));
            }
        }
    }
    verdict(bad.is_empty(), if bad.is_empty() { "15 (rank, weight) cases".to_string() } else { bad.join(", ") })
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 11] = [
        ("golden automorphism commutators at rank 3, class 5", golden),
        ("collector agrees with the matrix oracle", oracle_agreement),
        ("closed-form composition of generalized inner data", composition),
        ("inversion of generalized inner data", inversion),
        ("flattening of nested data", flattening),
        ("synthesis from generator images", synthesis),
        ("generalized inner automorphisms form a metabelian group", metabelian_gen_inner),
        ("IA nilpotency bound", ia_nilpotency),
        ("basic-commutator rewriting and independence", rewriting),
        ("class-2 collapse and class-3 separation", class_separation),
        ("basic-commutator counts", basic_counts),
    ];
    let mut failures = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let v = check();
        failures += usize::from(!v.passed);
        println!("criterion {:>2} {}: {name} ({})", n + 1, if v.passed { "PASS" } else { "FAIL" }, v.detail);
    }
    println!("{}/{} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

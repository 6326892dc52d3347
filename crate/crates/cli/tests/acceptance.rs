//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always reach the terminal.

use std::process::Command;
use std::time::{Duration, Instant};

use motivic_steenrod::{
    milnor_basis, milnor_basis_in_degree, op_basis, op_basis_in_degree, BaseScalar,
    ClassicalElement, CoeffRing, GammaElement, Normalizer, OpElement, Prime, ScalarMonomial,
};
use motivic_steenrod_cli::verify::{self, Bounds, Report, Suite};
use motivic_steenrod_cli::{parse_classical, parse_dual, parse_op};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Verdict {
    ok: bool,
    details: Vec<String>,
}

impl Verdict {
    fn new() -> Self {
        Verdict {
            ok: true,
            details: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        if !ok {
            self.ok = false;
            self.details.push(format!("FAILED {what}"));
        }
    }

    /// Like `check`, but also lists the item when it holds.
    fn expect(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        if ok {
            self.note(what);
        } else {
            self.check(false, what);
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.details.push(what.into());
    }

    fn suite(&mut self, r: &Report) {
        let line = format!(
            "{} over {}: {} checked, {} skipped, {} failed",
            r.suite.name(),
            ring_name(r.ring),
            r.checked,
            r.skipped,
            r.failures.len()
        );
        self.check(r.passed() && r.checked > 0, line.clone());
        if r.passed() {
            self.note(line);
        }
        for f in r.failures.iter().take(5) {
            self.details.push(format!("  {f}"));
        }
    }
}

fn ring_name(ring: CoeffRing) -> String {
    format!("l={} {}", ring.prime().value(), ring.preset())
}

fn closed(l: u32) -> CoeffRing {
    CoeffRing::closed(Prime::new(l).unwrap())
}

fn run_suite(suite: Suite, ring: CoeffRing, bounds: Bounds) -> Report {
    verify::run(suite, ring, &bounds)
}

fn adem_oracle() -> Verdict {
    let mut v = Verdict::new();
    let bounds = || Bounds {
        max_degree: Some(40),
        ..Bounds::default()
    };
    v.suite(&run_suite(
        Suite::AdemOracle,
        CoeffRing::universal(),
        bounds(),
    ));
    v.suite(&run_suite(Suite::AdemOracle, closed(3), bounds()));
    v.suite(&run_suite(Suite::AdemOracle, closed(5), bounds()));
    v
}

fn known_identities() -> Verdict {
    let mut v = Verdict::new();
    let n = Normalizer::default();
    let cases = [
        (closed(2), "Sq1 Sq1", "0"),
        (closed(2), "Sq1 Sq2", "Sq3"),
        (closed(2), "Sq2 Sq2", "t Sq3 Sq1"),
        (CoeffRing::universal(), "Sq1 Sq1", "0"),
        (CoeffRing::universal(), "Sq1 Sq2", "Sq3"),
        (CoeffRing::universal(), "Sq2 Sq2", "t Sq3 Sq1"),
        (
            CoeffRing::universal(),
            "Sq2 Sq3",
            "Sq5 + Sq4 Sq1 + r Sq3 Sq1",
        ),
        (closed(3), "P1 P1", "2 P2"),
        (closed(3), "P1 b P1", "b P2 + P2 b"),
    ];
    for (ring, lhs, rhs) in cases {
        let got = n.normalize(&parse_op(lhs, ring).unwrap());
        let want = parse_op(rhs, ring).unwrap();
        let ok = got.as_ref() == Ok(&want);
        v.check(ok, format!("{lhs} = {rhs} over {}", ring_name(ring)));
        if ok {
            v.note(format!("{lhs} = {want} over {}", ring_name(ring)));
        }
    }
    v
}

fn basis_counts() -> Verdict {
    let mut v = Verdict::new();
    for l in [2, 3] {
        v.suite(&run_suite(
            Suite::BasisCount,
            closed(l),
            Bounds {
                max_p: Some(50),
                ..Bounds::default()
            },
        ));
    }
    for (p, q, want) in [(1, 0, 1), (2, 1, 1), (3, 1, 2)] {
        let a = op_basis(p, q, Prime::TWO).len();
        let d = milnor_basis(p, q, Prime::TWO).len();
        v.expect(
            a == want && d == want,
            format!("({p},{q}) at l=2: {a} admissible, {d} Milnor, expected {want}"),
        );
    }
    v
}

fn rewrite_health() -> Verdict {
    let mut v = Verdict::new();
    let rings = [closed(2), CoeffRing::universal(), closed(3), closed(5)];
    for ring in rings {
        v.suite(&run_suite(
            Suite::Health,
            ring,
            Bounds {
                max_degree: Some(60),
                samples: Some(10_000),
                ..Bounds::default()
            },
        ));
    }
    for ring in rings {
        v.suite(&run_suite(
            Suite::Associativity,
            ring,
            Bounds {
                max_degree: Some(30),
                samples: Some(1_000),
                ..Bounds::default()
            },
        ));
    }
    v
}

fn hopf_axioms() -> Verdict {
    let mut v = Verdict::new();
    for ring in [CoeffRing::universal(), closed(2), closed(3)] {
        for suite in [Suite::Coassoc, Suite::Antipode] {
            let bounds = Bounds {
                max_degree: Some(60),
                ..Bounds::default()
            };
            let r = run_suite(suite, ring, bounds);
            v.suite(&r);
            for scope in r.notes.iter().take(2) {
                v.note(format!("  {scope}"));
            }
        }
    }
    v
}

fn pairing() -> Verdict {
    let mut v = Verdict::new();
    for l in [2, 3] {
        v.suite(&run_suite(
            Suite::Pairing,
            closed(l),
            Bounds {
                max_p: Some(30),
                ..Bounds::default()
            },
        ));
    }
    v
}

fn cross_model() -> Verdict {
    let mut v = Verdict::new();
    for l in [2, 3] {
        v.suite(&run_suite(
            Suite::CrossModel,
            closed(l),
            Bounds {
                max_degree: Some(24),
                ..Bounds::default()
            },
        ));
    }
    v
}

fn random_scalar(rng: &mut impl Rng, ring: CoeffRing) -> BaseScalar {
    let l = ring.prime().value();
    let terms = (0..rng.random_range(1..=2)).map(|_| {
        let rho = if ring.has_rho() {
            rng.random_range(0..3)
        } else {
            0
        };
        let tau = if ring.has_tau() {
            rng.random_range(0..3)
        } else {
            0
        };
        (ScalarMonomial::new(rho, tau), rng.random_range(1..l))
    });
    BaseScalar::from_terms(ring, terms.collect::<Vec<_>>())
}

fn random_op(rng: &mut impl Rng, ring: CoeffRing) -> OpElement {
    let mut e = OpElement::zero(ring);
    for _ in 0..rng.random_range(1..=4) {
        let basis = op_basis_in_degree(rng.random_range(0..=20), ring.prime());
        if let Some(m) = basis.get(rng.random_range(0..basis.len().max(1))) {
            e.add_term(random_scalar(rng, ring), m.clone());
        }
    }
    e
}

fn random_dual(rng: &mut impl Rng, ring: CoeffRing) -> GammaElement {
    let mut e = GammaElement::zero(ring);
    for _ in 0..rng.random_range(1..=4) {
        let basis = milnor_basis_in_degree(rng.random_range(0..=20), ring.prime());
        if let Some(m) = basis.get(rng.random_range(0..basis.len().max(1))) {
            e.add_term(random_scalar(rng, ring), *m);
        }
    }
    e
}

fn random_classical(rng: &mut impl Rng, prime: Prime) -> ClassicalElement {
    let mut e = ClassicalElement::zero(prime);
    for _ in 0..rng.random_range(1..=4) {
        let basis = op_basis_in_degree(rng.random_range(0..=20), prime);
        if let Some(m) = basis.get(rng.random_range(0..basis.len().max(1))) {
            e.add_term(rng.random_range(1..prime.value()), m.clone());
        }
    }
    e
}

fn steenrod(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_steenrod"))
        .args(args)
        .output()
        .expect("the steenrod binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn cli_contract() -> Verdict {
    let mut v = Verdict::new();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let rings = [closed(2), CoeffRing::universal(), closed(3), closed(5)];
    let mut bad = 0;
    for i in 0..1_000 {
        let ring = rings[i % rings.len()];
        let ok = match i % 3 {
            0 => {
                let e = random_op(&mut rng, ring);
                parse_op(&e.to_string(), ring).as_ref() == Ok(&e)
            }
            1 => {
                let e = random_dual(&mut rng, ring);
                parse_dual(&e.to_string(), ring).as_ref() == Ok(&e)
            }
            _ => {
                let e = random_classical(&mut rng, ring.prime());
                parse_classical(&e.to_string(), ring.prime()).as_ref() == Ok(&e)
            }
        };
        bad += usize::from(!ok);
    }
    v.expect(
        bad == 0,
        format!("parse(print(x)) = x on 1000 random elements, {bad} mismatches"),
    );

    let dumps: [&[&str]; 5] = [
        &["--format", "structured", "table", "--max-degree", "8"],
        &[
            "--format",
            "structured",
            "--preset",
            "universal",
            "mul",
            "Sq2",
            "Sq3",
        ],
        &["--format", "structured", "coproduct", "t0 x1 + t x2"],
        &[
            "--format",
            "structured",
            "--prime",
            "3",
            "basis",
            "--max-p",
            "20",
            "--dual",
        ],
        &[
            "--format",
            "structured",
            "verify",
            "basis-count",
            "--max-p",
            "10",
        ],
    ];
    for args in dumps {
        let (c1, a) = steenrod(args);
        let (c2, b) = steenrod(args);
        let parses = serde_json::from_slice::<serde_json::Value>(&a).is_ok();
        v.expect(
            c1 == 0 && c2 == 0 && a == b && parses,
            format!("byte-stable dump of `{}`", args.join(" ")),
        );
    }

    let codes: [(&[&str], i32); 6] = [
        (&["normalize", "Sq2 Sq2"], 0),
        (&["normalize", "Sq0"], 1),
        (&["no-such-command"], 1),
        (&["--prime", "4", "normalize", "P1"], 1),
        (&["--preset", "universal", "mul", "Sq2", "t"], 2),
        (&["verify", "adem-oracle", "--fuel", "0"], 3),
    ];
    for (args, want) in codes {
        let (code, _) = steenrod(args);
        v.expect(
            code == want,
            format!(
                "`steenrod {}` exits {code}, expected {want}",
                args.join(" ")
            ),
        );
    }
    v
}

type Criterion = (&'static str, Duration, fn() -> Verdict);

fn main() {
    let criteria: [Criterion; 8] = [
        ("Adem oracle", Duration::from_secs(10), adem_oracle),
        ("known identities", Duration::from_secs(1), known_identities),
        ("basis counts", Duration::from_secs(30), basis_counts),
        ("rewrite health", Duration::from_secs(120), rewrite_health),
        (
            "Hopf algebroid axioms",
            Duration::from_secs(60),
            hopf_axioms,
        ),
        ("perfect pairing", Duration::from_secs(60), pairing),
        (
            "cross-model equivalence",
            Duration::from_secs(300),
            cross_model,
        ),
        ("CLI contract", Duration::from_secs(10), cli_contract),
    ];
    let mut failed = 0;
    for (i, (name, budget, criterion)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let mut verdict = criterion();
        let elapsed = start.elapsed();
        verdict.check(
            elapsed <= budget,
            format!("runtime {elapsed:.1?} within {budget:?}"),
        );
        let status = if verdict.ok { "PASS" } else { "FAIL" };
        println!(
            "{status} {}. {name} ({elapsed:.1?}, budget {budget:?})",
            i + 1
        );
        for d in &verdict.details {
            println!("    {d}");
        }
        failed += usize::from(!verdict.ok);
    }
    println!("{} of 8 criteria passed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

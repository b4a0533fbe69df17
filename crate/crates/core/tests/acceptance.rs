//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits with a
//! nonzero status if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use weyl_toric::diagram::{crosses_antidiagonal, intersection_a};
use weyl_toric::fan_oracle::DEFAULT_SEED;
use weyl_toric::*;

type Check = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Check);

fn sys(s: &str) -> RootSystemId {
    s.parse().unwrap()
}

fn el(system: &str, s: &str) -> WeylElement {
    WeylElement::parse(sys(system), s).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn oracle(system: RootSystemId) -> Result<Oracle, String> {
    Oracle::for_system(system, DEFAULT_SIZE_CAP).map_err(|e| e.to_string())
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let g2 = RootSystemId::g2();
    let o = oracle(g2)?;
    for (m, expected) in [("3,-2;3", 1), ("3,-2;3,-2", -1), ("3;3", -3)] {
        let m = TauMonomial::parse(g2, m).map_err(|e| e.to_string())?;
        let f = intersection_number(&m).value;
        let q = o.integral(&m).map_err(|e| e.to_string())?;
        ensure(f == expected && q == expected, || {
            format!("{m}: formula {f}, oracle {q}, expected {expected}")
        })?;
    }
    let r = verify_family(
        g2,
        VerifyMode::Exhaustive,
        0,
        DEFAULT_SEED,
        DEFAULT_SIZE_CAP,
    )
    .map_err(|e| e.to_string())?;
    ensure(r.total == 78, || {
        format!("{} multisets, expected 78", r.total)
    })?;
    ensure(r.passed(), || format!("mismatches: {:?}", r.mismatches))?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("78 multisets, 0 mismatches, {elapsed:.2?}"))
}

fn criterion_2() -> Check {
    let (u, v, w) = (el("A4", "12354"), el("A4", "31254"), el("A4", "35421"));
    let lambda = diagram::build_lambda(&u, &v, &w).map_err(|e| e.to_string())?;
    let rows = lambda.diagram().map(|d| d.rows().to_vec());
    ensure(rows == Some(vec![4, 4, 1, 1]), || {
        format!("diagram {lambda}")
    })?;
    let value = triple_number(&u, &v, &w).map_err(|e| e.to_string())?;
    ensure(value == 2, || format!("value {value}"))?;
    Ok("value 2, diagram (4,4,1,1)".into())
}

fn criterion_3() -> Check {
    let ring = BasisRing::new(sys("A3"), DEFAULT_SIZE_CAP).map_err(|e| e.to_string())?;
    let u = el("A3", "2134");
    let got = ring
        .structure_constants(&u, &u)
        .map_err(|e| e.to_string())?;
    let expected = [
        ("2431", 1),
        ("4213", -1),
        ("3421", -1),
        ("3241", -1),
        ("3214", -1),
    ]
    .into_iter()
    .fold(BasisCombination::zero(), |acc, (w, c)| {
        acc.with_term(el("A3", w), c)
    });
    ensure(got == expected, || format!("got {got}"))?;
    Ok(format!("[X_2134]^2 = {got}"))
}

fn simple_reflection(system: RootSystemId, i: usize) -> WeylElement {
    let mut oneline: Vec<i32> = (1..=system.ambient_dim() as i32).collect();
    oneline.swap(i - 1, i);
    WeylElement::new(system, oneline).unwrap()
}

fn criterion_4() -> Check {
    let mut pairs = 0;
    for n in 1..=5 {
        let system = RootSystemId::new(Family::A, n).unwrap();
        let ring = BasisRing::new(system, DEFAULT_SIZE_CAP).map_err(|e| e.to_string())?;
        for i in 1..=n {
            for j in 1..=n {
                if i == j {
                    continue;
                }
                let (si, sj) = (simple_reflection(system, i), simple_reflection(system, j));
                let got = ring
                    .structure_constants(&si, &sj)
                    .map_err(|e| e.to_string())?;
                let expected = if i.abs_diff(j) >= 2 {
                    BasisCombination::basis(si.compose(&sj))
                } else {
                    BasisCombination::zero()
                };
                ensure(got == expected, || {
                    format!("A{n} s{i}*s{j}: got {got}, expected {expected}")
                })?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} ordered pairs over A1..A5"))
}

fn criterion_5() -> Check {
    let u = el("B4", "2,-3,1,4");
    let w = el("B4", "2,-3,-1,-4");
    let value = triple_number(&u, &u, &w).map_err(|e| e.to_string())?;
    ensure(value == 4, || format!("value {value}"))?;
    Ok("value 4".into())
}

fn criterion_6() -> Check {
    let m = TauMonomial::parse(sys("D5"), "-1;-1;-1,3,4,5,-2;-1,3,4,5,-2;-1,3,4,5,-2")
        .map_err(|e| e.to_string())?;
    let direct = intersection_number(&m).value;
    let u = el("D5", "-1,3,4,5,-2");
    let w = el("D5", "-1,-2,5,4,3");
    let triple = triple_number(&u, &u, &w).map_err(|e| e.to_string())?;
    ensure(direct == -4 && triple == -4, || {
        format!("monomial {direct}, triple {triple}")
    })?;
    Ok("monomial -4, triple -4".into())
}

fn criterion_7() -> Check {
    let start = Instant::now();
    let mut summary = Vec::new();
    for s in ["A1", "A2", "A3", "A4", "B2", "B3", "C2", "C3", "D4", "G2"] {
        let system = sys(s);
        let r = verify_family(
            system,
            VerifyMode::Exhaustive,
            0,
            DEFAULT_SEED,
            DEFAULT_SIZE_CAP,
        )
        .map_err(|e| e.to_string())?;
        ensure(r.passed(), || {
            format!(
                "{s}: {} mismatches, first {:?}",
                r.mismatches.len(),
                r.mismatches[0]
            )
        })?;
        let mut non_chain = 0;
        if system.rank() >= 2 {
            let o = oracle(system)?;
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            for _ in 0..1000 {
                let m = o.random_non_chain_monomial(&mut rng);
                let f = intersection_number(&m).value;
                let q = o.integral(&m).map_err(|e| e.to_string())?;
                ensure(f == 0 && q == 0, || {
                    format!("{s} non-chain {m}: formula {f}, oracle {q}")
                })?;
                non_chain += 1;
            }
        }
        summary.push(format!("{s}:{}+{non_chain}", r.total));
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(300), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("{} in {elapsed:.2?}", summary.join(" ")))
}

const SCOPE: [&str; 14] = [
    "A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "D5", "G2",
];

fn criterion_8a() -> Check {
    let mut count = 0;
    for s in SCOPE {
        let o = oracle(sys(s))?;
        for u in enumerate_weyl(sys(s)) {
            let m = TauMonomial::transversal(&u);
            let f = intersection_number(&m).value;
            let q = o.integral(&m).map_err(|e| e.to_string())?;
            ensure(f == 1 && q == 1, || {
                format!("{s} {u}: formula {f}, oracle {q}")
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} fixed points"))
}

fn criterion_8b() -> Check {
    let mut checked = 0;
    for s in ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2"] {
        let system = sys(s);
        let ring = BasisRing::new(system, DEFAULT_SIZE_CAP).map_err(|e| e.to_string())?;
        let id = WeylElement::identity(system);
        let elements = ring.elements();
        for (i, u) in elements.iter().enumerate() {
            for (j, v) in elements.iter().enumerate() {
                let x = triple_number(v, &id, u).map_err(|e| e.to_string())?;
                ensure(x == ring.pairing().entry(i, j), || {
                    format!("{s} ({u},{v}) stored entry differs")
                })?;
                if i == j {
                    ensure(x == 1, || format!("{s} diagonal at {u} is {x}"))?;
                }
                if ring.degree(i) != ring.degree(j) {
                    ensure(x == 0, || {
                        format!("{s} ({u},{v}) = {x} across degree blocks")
                    })?;
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} entries"))
}

fn random_monomial(o: &Oracle, rng: &mut ChaCha8Rng) -> TauMonomial {
    if rng.gen_bool(0.75) {
        o.random_chain_monomial(rng)
    } else {
        let system = o.fan().system();
        let factors = (0..system.rank())
            .map(|_| o.fan().rays().choose(rng).unwrap().label)
            .collect();
        TauMonomial::new(system, factors).unwrap()
    }
}

fn criterion_8c() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for s in SCOPE {
        let o = oracle(sys(s))?;
        let group = enumerate_weyl(sys(s));
        for _ in 0..200 {
            let u = group.choose(&mut rng).unwrap();
            let m = random_monomial(&o, &mut rng);
            let (a, b) = (
                intersection_number(&m).value,
                intersection_number(&m.act(u)).value,
            );
            ensure(a == b, || format!("{s} {m} under {u}: {a} vs {b}"))?;
        }
    }
    Ok(format!("200 pairs in each of {} systems", SCOPE.len()))
}

fn criterion_8d() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for s in SCOPE {
        let system = sys(s);
        let o = oracle(system)?;
        let roots = o.fan().root_system().roots().to_vec();
        for _ in 0..100 {
            let alpha = roots.choose(&mut rng).unwrap();
            let cone = o.fan().cones().choose(&mut rng).unwrap();
            let factors = (1..system.rank())
                .map(|_| o.fan().rays()[*cone.rays.choose(&mut rng).unwrap()].label)
                .collect();
            let mu = TauMonomial::new(system, factors).unwrap();
            let sum = o
                .linear_relation_sum(alpha, &mu)
                .map_err(|e| e.to_string())?;
            ensure(sum == 0, || {
                format!("{s} alpha {alpha:?}, mu {mu}: sum {sum}")
            })?;
        }
    }
    Ok(format!("100 pairs in each of {} systems", SCOPE.len()))
}

fn criterion_8e() -> Check {
    let mut count = 0;
    for s in ["G2", "A1", "A2", "A3"] {
        let ring = BasisRing::new(sys(s), DEFAULT_SIZE_CAP).map_err(|e| e.to_string())?;
        for u in ring.elements() {
            for v in ring.elements() {
                let ok = ring.duality_check(u, v).map_err(|e| e.to_string())?;
                ensure(ok, || format!("{s} ({u},{v})"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} pairs"))
}

fn criterion_8f() -> Check {
    let mut count = 0;
    for s in ["A2", "A3", "B2", "B3", "C3", "G2"] {
        let ring = BasisRing::new(sys(s), DEFAULT_SIZE_CAP).map_err(|e| e.to_string())?;
        let elements = ring.elements();
        for (i, u) in elements.iter().enumerate() {
            for (j, v) in elements.iter().enumerate().skip(i) {
                let uv = ring.structure_constants(u, v).map_err(|e| e.to_string())?;
                let vu = ring.structure_constants(v, u).map_err(|e| e.to_string())?;
                ensure(uv == vu, || format!("{s}: c({u},{v}) != c({v},{u})"))?;
                for (w, _) in uv.terms() {
                    let k = ring.index_of(w).unwrap();
                    ensure(ring.degree(k) == ring.degree(i) + ring.degree(j), || {
                        format!("{s}: [X_{u}][X_{v}] has term {w} of wrong degree")
                    })?;
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} unordered pairs"))
}

fn criterion_9() -> Check {
    let start = Instant::now();
    let mut count = 0;
    for n in 1..=6 {
        for lambda in diagram::YoungDiagram::all_in_square(n) {
            let nonzero = intersection_a(&lambda) != 0;
            ensure(nonzero == crosses_antidiagonal(&lambda), || {
                format!(
                    "{lambda:?}: predicate {}, value {}",
                    crosses_antidiagonal(&lambda),
                    intersection_a(&lambda)
                )
            })?;
            count += 1;
        }
    }
    // first corner of (2,1,1) has c = -1
    let small = diagram::YoungDiagram::new(vec![2, 1, 1]).map_err(|e| e.to_string())?;
    ensure(
        !crosses_antidiagonal(&small) && intersection_a(&small) == 0,
        || "(2,1,1) is nonzero".into(),
    )?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("{count} diagrams in {elapsed:.2?}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 14] = [
        ("1", "G2 values and exhaustive G2 sweep", criterion_1),
        ("2", "type A triple (12354, 31254, 35421)", criterion_2),
        ("3", "type A ring example [X_2134]^2", criterion_3),
        ("4", "simple reflection products, A n<=5", criterion_4),
        ("5", "type B triple", criterion_5),
        ("6", "type D monomial and triple", criterion_6),
        ("7", "formula equals oracle", criterion_7),
        ("8a", "transversal monomials integrate to 1", criterion_8a),
        ("8b", "pairing diagonal and degree blocks", criterion_8b),
        (
            "8c",
            "Weyl invariance of intersection numbers",
            criterion_8c,
        ),
        ("8d", "linear relations at the oracle", criterion_8d),
        ("8e", "duality check", criterion_8e),
        (
            "8f",
            "commutativity and grading of structure constants",
            criterion_8f,
        ),
        ("9", "antidiagonal predicate iff nonzero, n<=6", criterion_9),
    ];
    let mut failed = 0;
    for (id, name, check) in criteria {
        match check() {
            Ok(detail) => println!("criterion {id} PASS: {name} ({detail})"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id} FAIL: {name} ({detail})");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}

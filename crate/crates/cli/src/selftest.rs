//! Built-in golden checks on the bundled fixtures.

use num_bigint::BigInt;

use qcohom::arrangement::{compute_tables, DEFAULT_SUBSET_CAP};
use qcohom::battery::property_battery;
use qcohom::invariants::{alternating_sum, closed_euler, euler_chain, rules, Auxiliary, Verdict};
use qcohom::io::parse_input;
use qcohom::pipeline::{prepare, Prepared};

use crate::commands::CliError;

const FIXTURES: &[(&str, &str)] = &[
    ("ammann_kramer", include_str!("../../../fixtures/ammann_kramer.toml")),
    ("ammann_kramer_scheme", include_str!("../../../fixtures/ammann_kramer_scheme.toml")),
    ("fibonacci", include_str!("../../../fixtures/fibonacci.toml")),
    ("fibonacci_scheme", include_str!("../../../fixtures/fibonacci_scheme.toml")),
    ("codim1_two_interval", include_str!("../../../fixtures/codim1_two_interval.toml")),
    ("octagonal", include_str!("../../../fixtures/octagonal.toml")),
    ("penrose", include_str!("../../../fixtures/penrose.toml")),
    ("penrose_generic5", include_str!("../../../fixtures/penrose_generic5.toml")),
    ("toy_codim2", include_str!("../../../fixtures/toy_codim2.toml")),
];

fn fixture(name: &str) -> Result<Prepared, String> {
    let text = FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t).ok_or("unknown fixture")?;
    let input = parse_input(text).map_err(|e| e.to_string())?;
    prepare(&input).map_err(|e| e.to_string())
}

fn ints(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|x| i64::try_from(x).unwrap_or(i64::MIN)).collect()
}

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn ammann_kramer() -> Result<String, String> {
    let p = fixture("ammann_kramer")?;
    let (orbits, r) = p.invariants(DEFAULT_SUBSET_CAP).map_err(|e| e.to_string())?;
    expect("L_0, L_1, L_2", orbits.counts.clone(), vec![32, 46, 15])?;
    let rel = |parent: usize, level: usize| {
        orbits.relative.iter().find(|x| x.parent_dim == parent && x.level == level).map(|x| (x.sum, x.min, x.max))
    };
    expect("Σ_lines L_0^Θ", rel(1, 0).map(|x| x.0), Some(152))?;
    expect("per plane L_1^α", rel(2, 1).map(|x| (x.1, x.2)), Some((8, 8)))?;
    expect("per plane L_0^α", rel(2, 0).map(|x| (x.1, x.2)), Some((8, 8)))?;
    let Auxiliary::Codim3 { l1_tilde, big_r, .. } = &r.aux else {
        return Err("expected codimension-three data".into());
    };
    expect("L̃_1", ints(std::slice::from_ref(l1_tilde)), vec![74])?;
    expect("R", ints(big_r), vec![69, 9])?;
    expect("D", ints(&r.d), vec![180, 71, 12, 1])?;
    expect("e", ints(std::slice::from_ref(&r.e)), vec![120])?;
    expect("K", (r.k0_rank.clone(), r.k1_rank.clone()), (Some(BigInt::from(192)), Some(BigInt::from(72))))?;
    Ok("D = (180, 71, 12, 1), K0 = 192, K1 = 72".into())
}

fn codim1() -> Result<String, String> {
    let mut out = Vec::new();
    for (name, h) in [("fibonacci", vec![1, 2]), ("fibonacci_scheme", vec![1, 2]), ("codim1_two_interval", vec![1, 3])] {
        let (_, r) = fixture(name)?.invariants(DEFAULT_SUBSET_CAP).map_err(|e| e.to_string())?;
        expect(name, r.cohomology.as_deref().map(ints), Some(h.clone()))?;
        out.push(format!("{name} H = {h:?}"));
    }
    Ok(out.join(", "))
}

fn euler_cross_oracle() -> Result<String, String> {
    let mut checked = 0;
    for (name, _) in FIXTURES {
        let p = fixture(name)?;
        let Some(arr) = p.arrangement.as_ref() else { continue };
        let Ok(tables) = compute_tables(arr, DEFAULT_SUBSET_CAP) else { continue };
        let Ok((_, r)) = p.invariants(DEFAULT_SUBSET_CAP) else { continue };
        let chain = euler_chain(&tables).map_err(|e| e.to_string())?;
        expect(&format!("{name}: Σ(−1)^p D_p vs chain"), alternating_sum(&r.d), chain.clone())?;
        if let Some(closed) = closed_euler(&tables) {
            expect(&format!("{name}: closed Euler vs chain"), closed, chain)?;
        }
        if !r.rules.iter().any(|x| x == rules::CHAIN_EULER) {
            return Err(format!("{name}: chain Euler check missing"));
        }
        checked += 1;
    }
    Ok(format!("{checked} fixtures"))
}

fn obstruction() -> Result<String, String> {
    for (name, verdict, rule) in [
        ("penrose_generic5", Verdict::InfinitelyGenerated, Some(rules::DIVISIBILITY)),
        ("ammann_kramer", Verdict::NoObstruction, None),
        ("toy_codim2", Verdict::InfinitelyGenerated, Some(rules::STABILIZER_RANK)),
    ] {
        let v = fixture(name)?.obstruction(DEFAULT_SUBSET_CAP);
        expect(name, v.verdict, verdict)?;
        if let Some(rule) = rule {
            if !v.reasons.iter().any(|r| r.rule == rule) {
                return Err(format!("{name}: no {rule} reason"));
            }
        }
    }
    Ok("3 verdicts".into())
}

fn stabilizers() -> Result<String, String> {
    for name in ["penrose", "octagonal"] {
        let ranks = fixture(name)?.stabilizer_ranks();
        if ranks.is_empty() || ranks.iter().any(|&r| r != 2) {
            return Err(format!("{name}: stabilizer ranks {ranks:?}"));
        }
    }
    Ok("all rank 2".into())
}

pub fn run(seed: u64, threads: Option<usize>) -> Result<(), CliError> {
    if let Some(n) = threads {
        // Fails only if a pool already exists, which cannot happen this early.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let battery = move || {
        let r = property_battery(seed, 1000, 8, 20);
        if r.passed() {
            Ok(format!("{} matrices, seed {seed}", r.cases))
        } else {
            Err(r.failures.iter().take(5).cloned().collect::<Vec<_>>().join("; "))
        }
    };
    let suites: Vec<(&str, Box<dyn Fn() -> Result<String, String>>)> = vec![
        ("ammann-kramer golden numbers", Box::new(ammann_kramer)),
        ("codimension-one ranks", Box::new(codim1)),
        ("euler cross-oracle", Box::new(euler_cross_oracle)),
        ("obstruction verdicts", Box::new(obstruction)),
        ("stabilizer regression", Box::new(stabilizers)),
        ("linear-algebra property battery", Box::new(battery)),
    ];
    let mut failed = 0;
    for (name, check) in suites {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    if failed > 0 {
        return Err(CliError { error: "selftest", message: format!("{failed} suite(s) failed") });
    }
    Ok(())
}

//! One line per headline criterion. Run with `cargo test --test acceptance`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use lpa::catalog::{
    builtin_seed, classify_variables, equations_for, family, label_expansions, membership_stats, verify_on_variety,
    E6_LOOPED_ORBITS, E6_ORBITS, E6_QUOTIENT_EDGES,
};
use lpa::explore::{explore, mutation_class, variable_class, Budget, ExchangeGraph};
use lpa::parser::{parse_laurent, parse_polynomial, serialize_laurent, serialize_polynomial};
use lpa::symmetry::{apply_symmetry, builtin_symmetries, check_orbit_rows, name_orbits, orbit_partition, quotient_graph};
use lpa::{CanonicalKey, Integer, Monomial, VariableTable, ZLaurent, ZPolynomial, ZSeed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn seed(name: &str) -> Result<ZSeed, String> {
    ok(builtin_seed(name))
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.2?}, limit {limit:?}"))?;
    Ok(t)
}

/// Every node has two neighbours and the graph is one cycle.
fn is_cycle(g: &ExchangeGraph) -> bool {
    let n = g.len();
    let degrees_ok = g.neighbors.iter().enumerate().all(|(v, nb)| {
        let set: BTreeSet<usize> = nb.iter().flatten().copied().collect();
        nb.len() == 2 && set.len() == 2 && !set.contains(&v)
    });
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors[v].iter().flatten() {
            if !std::mem::replace(&mut seen[w], true) {
                queue.push_back(w);
            }
        }
    }
    degrees_ok && g.edges().len() == n && seen.iter().all(|&s| s)
}

fn rotation_is_mutation_at_x1(name: &str) -> Result<(), String> {
    let s = seed(name)?;
    let rot = &ok(builtin_symmetries(name))?[0];
    let rotated = ok(apply_symmetry(rot, &s))?;
    let mutated = ok(s.mutate(0))?;
    ensure(rotated.canonical_key() == mutated.canonical_key(), || format!("{name}: rotation and mutation at x1 differ"))
}

fn residuals(name: &str, count: usize) -> Result<(), String> {
    let s = seed(name)?;
    let labels = ok(label_expansions::<Integer>(name))?;
    let eqs = ok(equations_for(name))?;
    let r = ok(verify_on_variety(&labels.as_map(), s.table(), &eqs))?;
    let zero = r.iter().filter(|r| r.vanishes).count();
    ensure(r.len() == count && zero == count, || format!("{name}: {zero} of {} residuals vanish, expected {count}", r.len()))
}

fn a2_toy() -> Outcome {
    let start = Instant::now();
    let s = seed("a2-toy")?;
    let (seeds, _) = ok(mutation_class(&s, Budget::default()))?;
    let (vars, _) = ok(variable_class(&s, Budget::default()))?;
    ensure(seeds.len() == 5, || format!("{} seeds", seeds.len()))?;
    ensure(vars.len() == 5, || format!("{} variables", vars.len()))?;
    let target: ZLaurent = ok(parse_laurent("(1 + x1 + x2)/(x1*x2)", s.table()))?;
    ensure(vars.contains(&target), || "(1 + x1 + x2)/(x1*x2) missing".into())?;
    let t = within(start, Duration::from_secs(1))?;
    Ok(format!("5 seeds, 5 variables in {t:.2?}"))
}

fn e4() -> Outcome {
    let start = Instant::now();
    let s = seed("e4")?;
    let g = ok(explore(&s, Budget::default(), 1))?;
    ensure(g.len() == 5, || format!("{} seeds", g.len()))?;
    ensure(is_cycle(&g), || "exchange graph is not a 5-cycle".into())?;
    rotation_is_mutation_at_x1("e4")?;
    residuals("e4", 5)?;
    let t = within(start, Duration::from_secs(1))?;
    Ok(format!("pentagon, shift at x1, 5/5 residuals in {t:.2?}"))
}

fn e5() -> Outcome {
    let start = Instant::now();
    let s = seed("e5")?;
    let g = ok(explore(&s, Budget::default(), 1))?;
    ensure(g.len() == 16 && g.variables.len() == 10, || format!("{} seeds, {} variables", g.len(), g.variables.len()))?;
    ensure(g.edges().len() == 24, || format!("{} edges", g.edges().len()))?;
    let census = ok(g.face_census())?;
    ensure(census == BTreeMap::from([(4, 2), (5, 8)]), || format!("faces {census:?}"))?;
    rotation_is_mutation_at_x1("e5")?;
    let labels = ok(label_expansions::<Integer>("e5"))?;
    for expr in ["x1*x5 - a1*a5", "x2*x6 - a2*a6"] {
        let q = ok(labels.evaluate(expr, s.table()))?.sign_normalized();
        ensure(g.variables.contains(&q), || format!("{expr} is not a cluster variable"))?;
    }
    let p = g.positivity();
    ensure(p.passed(), || format!("positivity fails: {:?}", p.failures))?;
    let t = within(start, Duration::from_secs(5))?;
    Ok(format!("16 seeds, 10 variables, 24 edges, faces 8x5 + 2x4 in {t:.2?}"))
}

fn e6() -> Outcome {
    let start = Instant::now();
    let s = seed("e6")?;
    let g = ok(explore(&s, Budget::default(), 1))?;
    ensure(g.is_complete() && g.len() == 264, || format!("{} seeds", g.len()))?;
    ensure(g.variables.len() == 32, || format!("{} variables", g.variables.len()))?;

    let labels = ok(classify_variables(&g.variables, &ok(label_expansions("e6"))?, s.table()))?;
    let mut families: BTreeMap<&str, usize> = BTreeMap::new();
    for l in &labels {
        *families.entry(family(l)).or_default() += 1;
    }
    let want = BTreeMap::from([("t", 3), ("u", 2), ("x", 12), ("y", 12), ("z", 3)]);
    ensure(families == want, || format!("families {families:?}"))?;

    let gens = ok(builtin_symmetries("e6"))?;
    let mut p = ok(orbit_partition(&g, &gens))?;
    ensure(p.size_census() == BTreeMap::from([(12, 8), (24, 7)]), || format!("orbit sizes {:?}", p.size_census()))?;
    ok(name_orbits(&g, &mut p, &labels, &E6_ORBITS))?;

    let spot: Vec<_> = E6_ORBITS.iter().filter(|r| ["A", "E", "J"].contains(&r.name)).copied().collect();
    let spot_mismatches = check_orbit_rows(&g, &p, &labels, &spot);
    ensure(spot_mismatches.is_empty(), || format!("rows A, E, J: {}", spot_mismatches[0]))?;
    let all = check_orbit_rows(&g, &p, &labels, &E6_ORBITS);
    if let Some(m) = all.iter().find(|m| m.is_structural()) {
        return Err(m.to_string());
    }

    // projected edge multiplicities implied by the rows
    let q = quotient_graph(&g, &p);
    let index = |name: &str| p.names.iter().position(|n| n == name).expect("orbit name");
    let mut ends: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for row in &E6_ORBITS {
        let a = index(row.name);
        for (_, to) in row.mutations {
            let b = index(to);
            *ends.entry((a.min(b), a.max(b))).or_default() += q.sizes[a];
        }
    }
    // each edge is seen from both of its ends
    ensure(ends.values().all(|m| m % 2 == 0), || "odd number of edge ends".into())?;
    let implied: BTreeMap<(usize, usize), usize> = ends.into_iter().map(|(k, m)| (k, m / 2)).collect();
    ensure(implied == q.edges, || "quotient edge multiplicities differ from the orbit table".into())?;
    let mut pairs: Vec<(&str, &str)> = E6_QUOTIENT_EDGES.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    pairs.sort_unstable();
    ensure(q.adjacent_pairs() == pairs, || "quotient adjacency differs from the expected pairs".into())?;
    ensure(q.loops() == E6_LOOPED_ORBITS, || format!("loops at {:?}", q.loops()))?;

    let stats = membership_stats(&g.membership(), &labels);
    let want: BTreeMap<String, Vec<usize>> =
        [("t", 8), ("u", 36), ("x", 60), ("y", 32), ("z", 40)].into_iter().map(|(f, n)| (f.to_string(), vec![n])).collect();
    ensure(stats == want, || format!("membership {stats:?}"))?;
    residuals("e6", 27)?;
    let pos = g.positivity();
    ensure(pos.passed(), || format!("positivity fails: {:?}", pos.failures))?;
    ensure(g.seeds().all(|s| s.has_nontrivial_hat()), || "a seed has only trivial hats".into())?;
    let t = within(start, Duration::from_secs(300))?;
    let label_notes = all.len();
    Ok(format!(
        "264 seeds, 32 variables, 15 orbits 7x24 + 8x12, membership 60/32/40/8/36, 27/27 residuals, \
         {label_notes} variable-label discrepancy in the orbit table, in {t:.2?}"
    ))
}

const NVARS: usize = 5;

fn random_poly(rng: &mut ChaCha8Rng, max_terms: usize, max_exp: u16) -> ZPolynomial {
    let n = rng.gen_range(0..=max_terms);
    ZPolynomial::from_terms(
        NVARS,
        (0..n).map(|_| {
            let e: Vec<u16> = (0..NVARS).map(|_| rng.gen_range(0..=max_exp)).collect();
            (Monomial::from_exponents(&e), Integer::from(rng.gen_range(-6i64..=6)))
        }),
    )
}

fn random_nonzero(rng: &mut ChaCha8Rng, max_terms: usize, max_exp: u16) -> ZPolynomial {
    loop {
        let p = random_poly(rng, max_terms, max_exp);
        if !p.is_zero() {
            return p;
        }
    }
}

fn poly_oracles(cases: usize) -> Result<(), String> {
    let table = ok(VariableTable::new(["x1", "x2", "x3"], ["a1", "a2"]))?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for k in 0..cases {
        let a = random_poly(&mut rng, 5, 3);
        let b = random_nonzero(&mut rng, 4, 2);
        ensure(ok((&a * &b).exact_div(&b))? == Some(a.clone()), || format!("divide-back case {k}"))?;

        let c = random_nonzero(&mut rng, 3, 1);
        let a = random_nonzero(&mut rng, 4, 2);
        let (p, q) = (&a * &c, &b * &c);
        let g = ok(p.gcd(&q))?;
        let divides = |x: &ZPolynomial, d: &ZPolynomial| ok(x.exact_div(d)).map(|r| r.is_some());
        ensure(divides(&p, &g)? && divides(&q, &g)? && divides(&g, &c)?, || format!("gcd case {k}"))?;

        let r = random_poly(&mut rng, 8, 3);
        let back: ZPolynomial = ok(parse_polynomial(&serialize_polynomial(&r, &table), &table))?;
        ensure(back == r, || format!("round trip case {k}"))?;
    }
    Ok(())
}

const WORKERS: [usize; 2] = [1, 4];

fn keys(g: &ExchangeGraph) -> BTreeSet<CanonicalKey> {
    g.keys().cloned().collect()
}

fn class_properties(name: &str, rng: &mut ChaCha8Rng) -> Result<(usize, usize), String> {
    let s = seed(name)?;
    let graphs = WORKERS.iter().map(|&w| ok(explore(&s, Budget::default(), w))).collect::<Result<Vec<_>, _>>()?;
    let g = &graphs[0];
    ensure(g.is_complete(), || format!("{name}: incomplete"))?;
    ensure(
        graphs[1].keys().eq(g.keys()) && graphs[1].neighbors == g.neighbors && graphs[1].variables == g.variables,
        || format!("{name}: graph depends on the worker count"),
    )?;
    let mut pairs = 0;
    for (v, node) in g.nodes.iter().enumerate() {
        for slot in 0..node.seed.rank() {
            let back = ok(ok(node.seed.mutate(slot))?.mutate(slot))?;
            ensure(back.canonical_key() == node.key, || format!("{name}: node {v} slot {} is not involutive", slot + 1))?;
            pairs += 1;
        }
    }
    let all = keys(g);
    for _ in 0..10 {
        let root = rng.gen_range(0..g.len());
        for &w in &WORKERS {
            let h = ok(explore(&g.nodes[root].seed, Budget::default(), w))?;
            ensure(keys(&h) == all, || format!("{name}: re-rooting at node {root} with {w} workers changes the class"))?;
        }
    }
    Ok((pairs, g.len()))
}

fn properties() -> Outcome {
    let start = Instant::now();
    poly_oracles(1000)?;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut involutions = 0;
    for name in ["a2-toy", "e4", "e5", "e6"] {
        involutions += class_properties(name, &mut rng)?.0;
    }
    Ok(format!(
        "1000 cases each of divide-back, gcd and round trip; {involutions} double mutations; \
         10 re-rooted explorations per class with 1 and 4 workers, in {:.2?}",
        start.elapsed()
    ))
}

fn lpa(args: &[&str]) -> Result<String, String> {
    let out = ok(Command::new(env!("CARGO_BIN_EXE_lpa")).args(args).output())?;
    ensure(out.status.success(), || format!("lpa {args:?}: {}", String::from_utf8_lossy(&out.stderr)))?;
    ok(String::from_utf8(out.stdout))
}

fn scratch(name: &str, contents: &str) -> Result<String, String> {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    ok(std::fs::write(&path, contents))?;
    Ok(path.to_string_lossy().into_owned())
}

fn appendix() -> Outcome {
    let e4 = scratch(
        "acceptance-e4.json",
        r#"{"name": "e4", "frozen": ["a2", "a4", "a5", "a1", "a3"], "cluster": ["x1", "x2"],
            "exchange": {"x1": "a2*x2 + a4*a5", "x2": "a1*x1 + a3*a4"}}"#,
    )?;
    let text = lpa(&["explore", "--seed", &e4])?;
    ensure(text.starts_with("seeds: 5,"), || format!("e4 gave {:?}", text.lines().next()))?;

    let table = ok(VariableTable::new(["x1", "x2"], ["a2", "a4", "a5", "a1", "a3"]))?;
    let normalize = |s: &str| -> Result<String, String> {
        let e: ZLaurent = ok(parse_laurent(s, &table))?;
        Ok(serialize_laurent(&e.sign_normalized(), &table))
    };
    let session = [
        "(x1*a5*a1 + x2*a2*a3 + a4*a5*a3)/(x1*x2)",
        "(x1*a1 + a4*a3)/x2",
        "(x2*a2 + a4*a5)/x1",
        "x2",
        "x1",
    ];
    let want = session.iter().map(|s| normalize(s)).collect::<Result<BTreeSet<_>, _>>()?;
    let json: serde_json::Value = ok(serde_json::from_str(&lpa(&["explore", "--seed", &e4, "--format", "json"])?))?;
    let found = json["variables"]
        .as_array()
        .ok_or("no variable list")?
        .iter()
        .map(|v| normalize(v.as_str().unwrap_or_default()))
        .collect::<Result<BTreeSet<_>, _>>()?;
    ensure(found == want && json["variables"].as_array().map(Vec::len) == Some(5), || format!("e4 variables {found:?}"))?;

    let e5 = scratch(
        "acceptance-e5.json",
        r#"{"name": "e5", "frozen": ["a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8"], "cluster": ["x1", "x2", "x3"],
            "exchange": {"x1": "a5*x2 + a8*x3 + a2*a3", "x2": "a6*x1*x3 + a3*a4*x1 + a8*a1*x3 + a1*a2*a3",
                         "x3": "a4*x1 + a7*x2 + a1*a2"}}"#,
    )?;
    let text = lpa(&["explore", "--seed", &e5])?;
    ensure(text.starts_with("seeds: 16, variables: 10\n"), || format!("e5 gave {:?}", text.lines().next()))?;
    Ok("e4: 5 seeds and the 5 session variables; e5: 16 seeds, 10 variables".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 6] = [
        ("A2 toy", a2_toy),
        ("E4", e4),
        ("E5", e5),
        ("E6 headline", e6),
        ("property suites", properties),
        ("session parity", appendix),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

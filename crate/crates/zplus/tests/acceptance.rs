//! Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails or overruns its time budget.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use zplus::io::{parse_ring_file, serialize_ring};
use zplus_core::gallery::{gallery, load_gallery, GalleryEntry};
use zplus_core::ideals::quotient_ring;
use zplus_core::monomial::{box_points, box_primality, build_monoid_ideal, Exponent, MonoidIdeal, MonomialRing};
use zplus_core::oracle::{self, CheckOutcome};
use zplus_core::spectrum::{
    completely_prime_fast, minimal_primes_over, prime_definitional, prime_fast, serre_spec,
    spectrum_of, SerreLattice,
};
use zplus_core::topology::{build_topology, TopologyStyle};
use zplus_core::twocat::{classify_completely_primes, is_domain};
use zplus_core::{BasisSet, EnumerationGuard, ZPlusRing};

type Outcome = Result<String, String>;

struct Criterion {
    id: u8,
    title: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn guard() -> EnumerationGuard {
    EnumerationGuard::default()
}

fn lattice(ring: &ZPlusRing) -> Result<SerreLattice<'_>, String> {
    SerreLattice::new(ring, guard()).map_err(|e| format!("{}: {e}", ring.name()))
}

fn whole(ring: &ZPlusRing) -> BasisSet {
    BasisSet::from_indices(ring.len(), 0..ring.len())
}

fn show(ring: &ZPlusRing, set: &BasisSet) -> String {
    format!("{{{}}}", ring.subset_labels(set).join(","))
}

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

/// Runs an oracle check on each ring; totals the cases and stops at the first failure.
fn over_rings<'a>(
    rings: impl IntoIterator<Item = &'a GalleryEntry>,
    check: impl Fn(&SerreLattice<'_>) -> Result<CheckOutcome, String>,
) -> Result<(usize, usize), String> {
    let (mut rings_seen, mut cases) = (0, 0);
    for entry in rings {
        let l = lattice(&entry.ring)?;
        let outcome = check(&l)?;
        if let Some(f) = outcome.failure {
            return Err(format!("{}: {}: {f}", entry.name, outcome.name));
        }
        rings_seen += 1;
        cases += outcome.cases;
    }
    Ok((rings_seen, cases))
}

fn tally(rings: usize, cases: usize) -> Outcome {
    ensure(cases > 0, || "no cases examined".into())?;
    Ok(format!("{cases} cases over {rings} rings"))
}

fn simple_ring(name: &str) -> Result<(), String> {
    let ring = load_gallery(name).map_err(|e| e.to_string())?.ring;
    let l = lattice(&ring)?;
    let empty = ring.empty_set();
    ensure(l.ideals() == [empty.clone(), whole(&ring)], || format!("{name}: lattice is not {{∅, whole}}"))?;
    let spec = serre_spec(&ring, guard()).map_err(|e| e.to_string())?;
    ensure(spec.ideals() == [empty.clone()], || format!("{name}: spectrum is not {{∅}}"))?;
    ensure(prime_fast(&ring, &empty).holds() && prime_definitional(&l, &empty).holds(), || {
        format!("{name}: ∅ fails a prime mode")
    })?;
    Ok(())
}

fn c1_first_example() -> Outcome {
    simple_ring("zx2-1")?;
    Ok("lattice {∅, whole}, Spec {∅}, ∅ prime in both modes".into())
}

fn c2_matrix_blocks() -> Outcome {
    for name in ["m2-block", "m3-block"] {
        simple_ring(name)?;
        let ring = load_gallery(name).unwrap().ring;
        let classified = classify_completely_primes(&ring, guard()).map_err(|e| e.to_string())?;
        ensure(classified.is_empty(), || format!("{name}: completely primes {classified:?}"))?;
    }
    Ok("M2 and M3: lattice {∅, whole}, Spec {∅}, no completely primes".into())
}

fn c3_oracle_equivalence() -> Outcome {
    let rings = gallery();
    let small: Vec<&GalleryEntry> = rings.iter().filter(|e| e.ring.len() <= 12).collect();
    let (n, prime_cases) = over_rings(small.iter().copied(), |l| Ok(oracle::check_prime_modes(l)))?;
    let (_, semi_cases) = over_rings(small.iter().copied(), |l| Ok(oracle::check_semiprime_modes(l)))?;
    tally(n, prime_cases + semi_cases)
}

fn c4_semiprime_characterizations() -> Outcome {
    let (n, cases) = over_rings(&gallery(), |l| Ok(oracle::check_semiprime_powers(l, 4)))?;
    tally(n, cases)
}

fn c5_minimal_primes() -> Outcome {
    let (n, cases) = over_rings(&gallery(), |l| Ok(oracle::check_minimal_primes(l, guard())))?;
    let ring = load_gallery("two-idem").unwrap().ring;
    let found = minimal_primes_over(&ring, &ring.empty_set(), guard()).map_err(|e| e.to_string())?;
    let chain: Vec<String> = found.chain.iter().map(|p| show(&ring, p)).collect();
    ensure(chain == ["{a}", "{b}"], || format!("two-idem chain is {chain:?}"))?;
    Ok(format!("{}; two-idem chain [{{a}},{{b}}]", tally(n, cases)?))
}

fn c6_multiplicative_sets() -> Outcome {
    let (n, cases) = over_rings(&gallery(), |l| Ok(oracle::check_multiplicative_sets(l, guard(), 8)))?;
    tally(n, cases)
}

fn c7_topology() -> Outcome {
    let (n, cases) = over_rings(&gallery(), |l| Ok(oracle::check_topology(l)))?;
    let ring = load_gallery("zx2-x").unwrap().ring;
    let l = lattice(&ring)?;
    let spec = spectrum_of(&l);
    let edges = |style| {
        let family = build_topology(&l, &spec, style);
        let mut e: Vec<(String, String)> = family
            .specialization_edges()
            .into_iter()
            .map(|(p, q)| (show(&ring, &family.space[p]), show(&ring, &family.space[q])))
            .collect();
        e.sort();
        e
    };
    let zariski = edges(TopologyStyle::Zariski);
    let balmer = edges(TopologyStyle::Balmer);
    let expected = vec![("{}".to_string(), "{x}".to_string())];
    ensure(zariski == expected, || format!("zx2-x Zariski order {zariski:?}"))?;
    let flipped: Vec<(String, String)> = zariski.iter().map(|(p, q)| (q.clone(), p.clone())).collect();
    ensure(balmer == flipped, || format!("zx2-x Balmer order {balmer:?} is not the opposite"))?;
    Ok(format!("{}; zx2-x orders opposite", tally(n, cases)?))
}

fn c8_block_classification() -> Outcome {
    let mut cases = 0;
    for name in ["m2-block", "m3-block", "two-idem", "mixed-3obj"] {
        let entry = load_gallery(name).unwrap();
        let outcome = oracle::check_twocat(&entry.ring, guard()).map_err(|e| e.to_string())?;
        ensure(outcome.cases > 0, || format!("{name}: not checked as a block ring"))?;
        if let Some(f) = outcome.failure {
            return Err(format!("{name}: {f}"));
        }
        if let Some(expected) = &entry.expected.completely_primes {
            let got: Vec<Vec<String>> = classify_completely_primes(&entry.ring, guard())
                .map_err(|e| e.to_string())?
                .iter()
                .map(|p| entry.ring.subset_labels(p).into_iter().map(String::from).collect())
                .collect();
            ensure(&got == expected, || format!("{name}: completely primes {got:?}, recorded {expected:?}"))?;
        }
        cases += outcome.cases;
    }
    Ok(format!("classification = brute force on {cases} block rings"))
}

fn c9_domain_quotients() -> Outcome {
    let mut count = 0;
    for entry in gallery() {
        let ring = &entry.ring;
        for p in lattice(ring)?.proper_ideals().filter(|p| completely_prime_fast(ring, p).holds()) {
            let q = quotient_ring(ring, p).map_err(|e| format!("{}/{}: {e}", entry.name, show(ring, p)))?;
            // the parser validates from scratch
            parse_ring_file(&serialize_ring(&q)).map_err(|e| format!("{}/{}: {e}", entry.name, show(ring, p)))?;
            ensure(is_domain(&q).holds(), || format!("{}/{}: zero product", entry.name, show(ring, p)))?;
            count += 1;
        }
    }
    ensure(count > 0, || "no completely prime ideals".into())?;
    Ok(format!("{count} quotients validated and free of zero products"))
}

fn small_ideals(n: usize) -> Vec<MonoidIdeal> {
    let vectors: Vec<Exponent> = box_points(n, 2).into_iter().filter(|v| v.iter().any(|&x| x > 0)).collect();
    let mut out = vec![build_monoid_ideal(n, &[]).unwrap()];
    for i in 0..vectors.len() {
        out.push(build_monoid_ideal(n, &[vectors[i].clone()]).unwrap());
        for j in (i + 1)..vectors.len() {
            out.push(build_monoid_ideal(n, &[vectors[i].clone(), vectors[j].clone()]).unwrap());
            for k in (j + 1)..vectors.len() {
                let gens = [vectors[i].clone(), vectors[j].clone(), vectors[k].clone()];
                out.push(build_monoid_ideal(n, &gens).unwrap());
            }
        }
    }
    out
}

fn c10_monomial_model() -> Outcome {
    let mut decided = 0;
    for n in 1..=3 {
        for ideal in small_ideals(n) {
            let face = ideal.is_prime().map_err(|e| e.to_string())?.is_prime();
            let brute = box_primality(&ideal, 4).holds();
            ensure(face == brute, || format!("{:?}: face test {face}, box {brute}", ideal.generators()))?;
            decided += 1;
        }
    }
    let m3 = MonomialRing::quantum_affine(3);
    for k in 0..3 {
        let q = m3.face_quotient(&[k]).map_err(|e| e.to_string())?;
        let restricted: Vec<Vec<i64>> = (0..3)
            .filter(|&i| i != k)
            .map(|i| (0..3).filter(|&j| j != k).map(|j| m3.twist()[i][j]).collect())
            .collect();
        ensure(q.twist() == restricted.as_slice(), || format!("face {k}: twist {:?}", q.twist()))?;
        let plane = MonomialRing::quantum_affine(2);
        ensure(q.twist() == plane.twist(), || format!("face {k}: not quantum affine 2-space"))?;
        let (a, b) = (q.truncate_to_ring(4), plane.truncate_to_ring(4));
        let same = a.len() == b.len() && (0..a.len()).all(|x| (0..a.len()).all(|y| a.product(x, y) == b.product(x, y)));
        ensure(same, || format!("face {k}: degree-4 truncations differ"))?;
    }
    Ok(format!("{decided} ideals decided = box brute force; 3 face quotients = quantum plane"))
}

fn c11_round_trip() -> Outcome {
    let mut rings: Vec<(String, ZPlusRing)> = gallery().into_iter().map(|e| (e.name, e.ring)).collect();
    for path in common::fixture_paths() {
        let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
        let ring = parse_ring_file(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        rings.push((path.display().to_string(), ring));
    }
    for (name, ring) in &rings {
        let text = serialize_ring(ring);
        let back = parse_ring_file(&text).map_err(|e| format!("{name}: reparse: {e}"))?;
        ensure(&back == ring, || format!("{name}: parse(serialize) differs"))?;
        ensure(serialize_ring(&back) == text, || format!("{name}: serialization not stable"))?;
    }
    let cases = common::golden_cases();
    for (name, args, code) in &cases {
        let first = common::run(args);
        let second = common::run(args);
        ensure(first == second, || format!("golden {name}: two runs differ"))?;
        ensure(first.code == *code, || format!("golden {name}: exit {} (expected {code})", first.code))?;
        let stored = std::fs::read_to_string(common::golden_path(name))
            .map_err(|e| format!("golden {name}: {e} (run the cli tests with UPDATE_GOLDEN=1)"))?;
        ensure(stored == first.stdout, || format!("golden {name}: report differs from the stored file"))?;
    }
    Ok(format!("{} rings round-trip; {} golden reports stable", rings.len(), cases.len()))
}

fn main() -> ExitCode {
    let s = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, title: "Z[x]/(x^2-1) lattice, spectrum and primality", budget: s(1), run: c1_first_example },
        Criterion { id: 2, title: "M2 and M3 block rings are Serre simple", budget: s(1), run: c2_matrix_blocks },
        Criterion { id: 3, title: "fast and definitional prime/semiprime agree", budget: s(60), run: c3_oracle_equivalence },
        Criterion { id: 4, title: "semiprime square and power characterizations", budget: s(60), run: c4_semiprime_characterizations },
        Criterion { id: 5, title: "minimal primes with product chains", budget: s(30), run: c5_minimal_primes },
        Criterion { id: 6, title: "maximal ideals avoiding multiplicative sets are prime", budget: s(30), run: c6_multiplicative_sets },
        Criterion { id: 7, title: "Zariski and Balmer topologies", budget: s(30), run: c7_topology },
        Criterion { id: 8, title: "completely primes via blocks = brute force", budget: s(30), run: c8_block_classification },
        Criterion { id: 9, title: "quotients by completely primes are domains", budget: s(10), run: c9_domain_quotients },
        Criterion { id: 10, title: "monomial face test and face quotients", budget: s(60), run: c10_monomial_model },
        Criterion { id: 11, title: "ring file round-trip and golden stability", budget: s(5), run: c11_round_trip },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let verdict = match result {
            Ok(detail) if elapsed <= c.budget => ("PASS", detail),
            Ok(detail) => ("FAIL", format!("{detail}; over budget")),
            Err(reason) => ("FAIL", reason),
        };
        if verdict.0 == "FAIL" {
            failed += 1;
        }
        println!(
            "{} criterion {:>2}: {} ({:.3}s of {}s) {}",
            verdict.0,
            c.id,
            c.title,
            elapsed.as_secs_f64(),
            c.budget.as_secs(),
            verdict.1
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

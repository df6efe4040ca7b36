//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Run with `cargo test -p gaussoid-core --test acceptance -- --nocapture` to
//! see the lines. All comparisons are exact (rational arithmetic, set
//! equality); the only tolerances are the two runtime bounds of criterion 1.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use gaussoid::axioms::{entails_with_weak_transitivity, instantiate_schemata, Schema};
use gaussoid::datasets::Registry;
use gaussoid::enumeration::{
    catalog, graph_histogram, minimal_representable_decomposition, verify_completeness_characterization, BucketConvention, Catalog,
};
use gaussoid::geometry::{
    cone_base_point, cyclic_certificate, jacobian_rank, random_cone_direction, rank_drop_criterion, sample_repeated_pair_point,
    sample_variety_point, singular_points, smoothness_evidence, tangent_cone_check, tangent_sequence_check, verify_component_decomposition,
    verify_singular_point, RepeatedPair, Verdict, CONE_IDS, IDENTITY_SINGULAR_IDS, SINGULAR_IDS, UNION_IDS,
};
use gaussoid::graph::separation_graphoid;
use gaussoid::identities::proof_identities;
use gaussoid::linalg::{random_correlation, random_square_diagonal_pd, rat, relation_of_matrix};
use gaussoid::poly::Polynomial;
use gaussoid::{canonical_class, Permutation, Relation};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_601;
const SINGLE_THREAD_LIMIT: Duration = Duration::from_secs(300);
const EIGHT_JOBS_LIMIT: Duration = Duration::from_secs(60);

fn r4(s: &str) -> Relation {
    Relation::parse(s, 4).unwrap()
}

fn line(ok: bool, id: &str, details: String) -> bool {
    println!("{} {id} {details}", if ok { "PASS" } else { "FAIL" });
    ok
}

fn reg() -> &'static Registry {
    Registry::global().expect("data directory loads")
}

fn c1_semigaussoids() -> bool {
    let t = Instant::now();
    let single = Catalog::compute(1);
    let single_time = t.elapsed();
    let t = Instant::now();
    let eight = Catalog::compute(8);
    let eight_time = t.elapsed();
    let ok = single.semigaussoids.len() == 157
        && eight.semigaussoids == single.semigaussoids
        && single_time < SINGLE_THREAD_LIMIT
        && eight_time < EIGHT_JOBS_LIMIT;
    line(
        ok,
        "criterion-1",
        format!(
            "semigaussoid classes {} ({} labeled); 1 job {:.2?}, 8 jobs {:.2?}",
            single.semigaussoids.len(),
            single.semigaussoids.total_labeled,
            single_time,
            eight_time
        ),
    )
}

fn c2_representable() -> bool {
    let cat = catalog();
    let fresh: Vec<String> = cat.representable.classes.iter().map(|c| c.representative.to_string()).collect();
    let mut shipped: Vec<String> = reg()
        .table1
        .iter()
        .map(|r| canonical_class(&r.relation).representative.to_string())
        .collect();
    shipped.sort_by_key(|s| fresh.iter().position(|f| f == s));
    let ok = cat.representable.len() == 53 && cat.representable.total_labeled == 629 && fresh == shipped;
    line(
        ok,
        "criterion-2",
        format!(
            "representable classes {} labeled {}; table 1 serialization {}",
            cat.representable.len(),
            cat.representable.total_labeled,
            if fresh == shipped { "identical" } else { "differs" }
        ),
    )
}

fn c3_complete() -> bool {
    let cat = catalog();
    let scan = verify_completeness_characterization(0);
    let ok = cat.complete.len() == 101 && scan.closed_classes.len() == 101 && scan.matches_complete;
    line(
        ok,
        "criterion-3",
        format!(
            "intersection construction {} classes, rule scan {} classes, class-for-class {}",
            cat.complete.len(),
            scan.closed_classes.len(),
            scan.matches_complete
        ),
    )
}

fn c4_histogram() -> bool {
    // expected bucket counts by Table 1 label
    let expected_buckets: [(usize, usize); 10] = [(2, 1), (3, 2), (4, 1), (5, 1), (6, 6), (7, 4), (8, 11), (12, 25), (16, 47), (53, 10)];
    let hist = graph_histogram(BucketConvention::NonStrict);
    let mut mismatches = Vec::new();
    let mut listed = 0;
    for (id, expected) in expected_buckets {
        let g = reg().graphs.iter().find(|g| g.table1_id == id).expect("graph for label");
        let canon = canonical_class(&separation_graphoid(&g.graph)).representative;
        let count = hist.buckets.iter().find(|(r, _)| *r == canon).map_or(0, |(_, n)| *n);
        listed += count;
        if count != expected {
            mismatches.push(format!("L{id}: {count} != {expected}"));
        }
    }
    let ok = mismatches.is_empty() && hist.kept == 109 && hist.kept - listed == 1 && hist.kept + hist.rest == 157;
    line(
        ok,
        "criterion-4",
        format!(
            "n0 <= n2 convention: {} kept ({} in listed buckets + saturated), {} others; mismatches {:?}",
            hist.kept, listed, hist.rest, mismatches
        ),
    )
}

fn c5_table2() -> bool {
    let mut bad = Vec::new();
    let mut sets = BTreeSet::new();
    for rec in &reg().table2 {
        let target = rec.relation();
        let d = minimal_representable_decomposition(&target).unwrap();
        let shipped: BTreeSet<Relation> = rec.components.iter().map(|c| c.relation).collect();
        let derived: BTreeSet<Relation> = d.components.iter().copied().collect();
        // minimal: every component is an inclusion-minimal representable superset
        let minimal = shipped.iter().all(|c| {
            reg().table1.iter().all(|r| {
                gaussoid::relation::orbit(&r.relation)
                    .iter()
                    .all(|o| !(target.is_subset(o).unwrap() && o.is_subset(c).unwrap() && o != c))
            })
        });
        if shipped != derived || !d.is_antichain() || !minimal || d.intersection() != target {
            bad.push(rec.id);
        }
        sets.insert(canonical_class(&target).representative);
    }
    let ok = bad.is_empty() && reg().table2.len() == 48 && sets.len() == 48;
    line(
        ok,
        "criterion-5",
        format!("{} decompositions, {} distinct classes, failing ids {:?}", reg().table2.len(), sets.len(), bad),
    )
}

fn c6_duals() -> bool {
    let t1 = &reg().table1;
    let mut bad = Vec::new();
    for r in t1 {
        let partner = &t1[r.dual_id - 1];
        if r.relation.dual().permuted(&r.dual_perm).unwrap() != partner.relation || partner.dual_id != r.id {
            bad.push(r.id);
        }
    }
    let l3_l38 = t1[2].relation.dual() == t1[37].relation;
    let swap = Permutation::parse_cycles("(14)(23)", 4).unwrap();
    let l10 = t1[9].relation.dual().permuted(&swap).unwrap() == t1[9].relation;
    let ok = bad.is_empty() && l3_l38 && l10;
    line(
        ok,
        "criterion-6",
        format!("53 pairings, failing ids {bad:?}; dual(L3) = L38: {l3_l38}; dual(L10) = L10 under (14)(23): {l10}"),
    )
}

fn c7_rank_drop() -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let configs = [
        ("m3", RepeatedPair::new(3, 0, 1, 0, 0b100).unwrap()),
        ("L29", RepeatedPair::from_relation(reg().relation(29).unwrap()).unwrap()),
        ("L32", RepeatedPair::from_relation(reg().relation(32).unwrap()).unwrap()),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, cfg) in configs {
        let l = cfg.relation();
        let (mut points, mut failures, mut max_rank, mut drops) = (0, 0, 0, 0);
        let mut k = 0;
        while points < 120 {
            k += 1;
            let r = match k % 3 {
                0 => sample_repeated_pair_point(&cfg, &mut rng, true),
                1 => sample_repeated_pair_point(&cfg, &mut rng, false),
                _ => match sample_variety_point(&l, &mut rng, None) {
                    Some(r) => r,
                    None => continue,
                },
            };
            if !r.is_positive_definite().unwrap() {
                continue;
            }
            points += 1;
            let rank = jacobian_rank(&l, &r).unwrap();
            let drop = rank_drop_criterion(&cfg, &r).unwrap();
            max_rank = max_rank.max(rank);
            drops += drop as usize;
            if drop != (rank == 1) {
                failures += 1;
            }
        }
        ok &= failures == 0 && max_rank == 2 && drops > 0;
        parts.push(format!("{name}: {points} points, {drops} on the drop locus, max rank {max_rank}, {failures} failures"));
    }
    line(ok, "criterion-7", parts.join("; "))
}

fn c8_singularities() -> bool {
    let reg = reg();
    let mut confirmed = 0;
    let mut bad = Vec::new();
    for id in SINGULAR_IDS {
        for p in singular_points(id).unwrap() {
            let rep = verify_singular_point(reg, id, &p).unwrap();
            if rep.verdict == Verdict::SingularConfirmed && p.is_positive_definite().unwrap() {
                confirmed += 1;
            } else {
                bad.push(format!("L{id}:{}", rep.verdict));
            }
        }
    }
    let identity_ok = IDENTITY_SINGULAR_IDS
        .iter()
        .all(|&id| singular_points(id).unwrap() == vec![gaussoid::linalg::RationalMatrix::identity(4)]);
    let lines_ok = [29, 32].iter().all(|&id| singular_points(id).unwrap().len() == 5);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut smooth_fail = Vec::new();
    let mut smooth_checks = 0;
    let smooth_ids: Vec<usize> = (1..=53).filter(|id| !SINGULAR_IDS.contains(id)).collect();
    for &id in &smooth_ids {
        let rep = smoothness_evidence(reg, id, 20, &mut rng).unwrap();
        smooth_checks += rep.checks.len();
        if !rep.passed() {
            smooth_fail.push(id);
        }
    }
    let mut comp_fail = Vec::new();
    for id in UNION_IDS {
        let rep = verify_component_decomposition(reg, id).unwrap();
        if !rep.passed() {
            comp_fail.push(id);
        }
    }
    let ok = bad.is_empty() && identity_ok && lines_ok && smooth_ids.len() == 41 && smooth_fail.is_empty() && comp_fail.is_empty();
    line(
        ok,
        "criterion-8",
        format!(
            "{confirmed} singular points confirmed, unconfirmed {bad:?}; {} smooth relations, {smooth_checks} rank checks, drops at {smooth_fail:?}; component checks failing for {comp_fail:?}",
            smooth_ids.len()
        ),
    )
}

fn c9_tangent_cones() -> bool {
    let reg = reg();
    let mut bad = Vec::new();
    let mut checked = 0;
    for id in CONE_IDS {
        for p in singular_points(id).unwrap() {
            let c = tangent_cone_check(reg, id, &p).unwrap();
            checked += 1;
            if !c.passed() {
                bad.push(id);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let ns = [10, 100, 1000];
    let mut seq_bad = Vec::new();
    let mut sequences = 0;
    for id in CONE_IDS {
        let rhos = match id {
            29 | 32 => vec![rat(0, 1), rat(1, 2), rat(-1, 3)],
            _ => vec![rat(0, 1)],
        };
        let l = reg.relation(id).unwrap();
        for rho in &rhos {
            let (cone, _) = reg.cone(id).unwrap().instantiate(rho).unwrap();
            let _ = cone_base_point(id, rho);
            for _ in 0..10 {
                let t = random_cone_direction(id, rho, &mut rng).unwrap();
                sequences += 1;
                if !tangent_sequence_check(id, rho, &t, &ns, &cone, l).unwrap_or(false) {
                    seq_bad.push(id);
                }
            }
        }
    }
    let ok = bad.is_empty() && seq_bad.is_empty();
    line(
        ok,
        "criterion-9",
        format!("{checked} cone checks, failing {bad:?}; {sequences} sequences at n in {ns:?}, failing {seq_bad:?}"),
    )
}

fn c10_proof_identities() -> bool {
    let mut ok = true;
    let mut parts = Vec::new();
    for identity in proof_identities().unwrap() {
        let o = identity.check();
        if o.name.starts_with("moreci1") {
            parts.push(format!("{} logged remainder {}", o.name, o.membership.default_remainder));
        } else {
            ok &= o.holds();
            parts.push(format!("{} {}", o.name, if o.holds() { "reduces to 0" } else { "FAILS" }));
        }
    }
    line(ok, "criterion-10", parts.join("; "))
}

fn c11_cyclic() -> bool {
    let expected = [
        (4, "r12*(1 - r13^2*r24^2)"),
        (5, "r12*(1 - r13*r24*r35*r14*r25)"),
        (6, "r12*(1 - r13*r24*r35*r46*r15*r26)"),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (m, target) in expected {
        let c = cyclic_certificate(m).unwrap();
        let verified = c.verify().unwrap();
        let matches = c.target == Polynomial::parse(target).unwrap();
        ok &= verified && matches;
        parts.push(format!("m={m} identity {verified} target {matches}"));
    }
    line(ok, "criterion-11", parts.join("; "))
}

fn c12_duality() -> bool {
    let mut bad = 0;
    let mut count = 0;
    for w in reg().witnesses.values() {
        count += 1;
        if relation_of_matrix(&w.inverse().unwrap()).unwrap() != relation_of_matrix(w).unwrap().dual() {
            bad += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for k in 0..100 {
        let m = if k % 2 == 0 { random_correlation(4, &mut rng) } else { random_square_diagonal_pd(4, &mut rng) };
        count += 1;
        if relation_of_matrix(&m.inverse().unwrap()).unwrap() != relation_of_matrix(&m).unwrap().dual() {
            bad += 1;
        }
    }
    line(bad == 0 && count == 153, "criterion-12", format!("{count} matrices, {bad} failures"))
}

fn c13_closure_regressions() -> bool {
    let cases = [
        ("cistart", "23|4,23|14,24|1,34|1", "23,23|1,24|13,34|12", vec![]),
        ("ci6", "14,14|23,23|1,23|14", "14|2,14|3", vec![Schema::Ci(4)]),
        ("ci9", "12,14|3,23|4,23|14", "12|3,12|4,12|34,14|23", vec![]),
        ("ci10", "12|3,14|2,23|4,23|14", "12,12|4,12|34,14", vec![]),
    ];
    let cat = catalog();
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, ante, cons, extra) in cases {
        let (a, c) = (r4(ante), r4(cons));
        let mut schemata = Schema::gaussoid();
        schemata.extend(extra);
        let rules = instantiate_schemata(4, &schemata).unwrap();
        let proof = entails_with_weak_transitivity(&a, &c, &rules).unwrap();
        let completion = cat.completion(&a).unwrap();
        let in_completion = c.is_subset(&completion).unwrap();
        let good = proof.is_some() && in_completion;
        ok &= good;
        parts.push(format!(
            "{name}: derivation {}, completion contains consequent {in_completion}",
            proof.map_or("none".to_string(), |p| format!("with {} cases", p.leaves()))
        ));
    }
    line(ok, "criterion-13", parts.join("; "))
}

#[test]
fn acceptance() {
    let results = [
        c1_semigaussoids(),
        c2_representable(),
        c3_complete(),
        c4_histogram(),
        c5_table2(),
        c6_duals(),
        c7_rank_drop(),
        c8_singularities(),
        c9_tangent_cones(),
        c10_proof_identities(),
        c11_cyclic(),
        c12_duality(),
        c13_closure_regressions(),
    ];
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, ok)| !**ok).map(|(k, _)| k + 1).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}

use std::collections::BTreeSet;

use proptest::prelude::*;
use quiverstab::helix::{check_line_bundle_degrees, restrict_to_base};
use quiverstab::rational::{int, ratio};
use quiverstab::stability::{stability_report, subrep_supports_with_cap, verdict_from_family};
use quiverstab::*;

fn rat(v: i64) -> Rational {
    int(v)
}

/// Random quivers on `1..=max_n` nodes with up to `2n` arrows of weight 0..=2.
fn arb_quiver(max_n: usize) -> impl Strategy<Value = Quiver> {
    (1..=max_n)
        .prop_flat_map(|n| {
            let arrow = (1..=n, 1..=n, 0u32..=2);
            (Just(n), prop::collection::vec(arrow, 0..=2 * n))
        })
        .prop_map(|(n, arrows)| {
            let arrows = arrows
                .into_iter()
                .enumerate()
                .map(|(k, (s, t, r))| Arrow::new(format!("a{k:02}"), s, t).with_weight(r))
                .collect();
            Quiver::new(n, arrows).unwrap()
        })
}

/// A point whose values are small integers, zero about a third of the time.
fn arb_point(q: &Quiver) -> impl Strategy<Value = RepresentationPoint> {
    let q = q.clone();
    prop::collection::vec(-2i64..=2, q.arrows().len())
        .prop_map(move |v| RepresentationPoint::new(&q, v.into_iter().map(rat).collect()).unwrap())
}

fn arb_nonzero() -> impl Strategy<Value = Rational> {
    (prop_oneof![-3i64..=-1, 1i64..=3], 1i64..=3).prop_map(|(a, b)| ratio(a, b))
}

fn arb_torus(n: usize) -> impl Strategy<Value = TorusElement> {
    prop::collection::vec(arb_nonzero(), n).prop_map(|t| TorusElement::new(t).unwrap())
}

fn arb_character(n: usize) -> impl Strategy<Value = Character> {
    prop::collection::vec(-3i64..=3, n).prop_map(|mut chi| {
        let s: i64 = chi.iter().sum();
        chi[0] -= s;
        Character::new(chi).unwrap()
    })
}

fn arb_quiver_point() -> impl Strategy<Value = (Quiver, RepresentationPoint)> {
    arb_quiver(6).prop_flat_map(|q| {
        let p = arb_point(&q);
        (Just(q), p)
    })
}

const CATALOG: &[&str] = &["p2", "pn(3)", "f1", "p1xp1", "p2-helix", "p1xp1-spiral"];

fn arb_entry() -> impl Strategy<Value = CatalogEntry> {
    prop::sample::select(CATALOG).prop_map(|name| get_entry(name).unwrap())
}

fn arb_cox(entry: &CatalogEntry) -> impl Strategy<Value = (Vec<Rational>, Option<Rational>)> {
    let e = entry.clone();
    let fiber = entry.has_fiber();
    (
        prop::collection::vec(-3i64..=3, entry.cox_variables().len()),
        -3i64..=3,
    )
        .prop_filter_map("irrelevant locus", move |(cox, l)| {
            let cox: Vec<Rational> = cox.into_iter().map(rat).collect();
            let fiber = fiber.then(|| rat(l));
            e.tautological_point(&cox, fiber.as_ref()).ok()?;
            Some((cox, fiber))
        })
}

fn arb_weights(n: usize) -> impl Strategy<Value = WeightMatrix> {
    prop::collection::vec(prop_oneof![3 => Just(0u64), 1 => 1u64..=2], n * n).prop_map(move |v| {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { 0 } else { v[i * n + j] })
                    .collect()
            })
            .collect();
        WeightMatrix::new(rows).unwrap()
    })
}

/// A labeled chain `n -> ... -> 1` with `k` parallel arrows per step, labels drawn from `x0..x2`.
fn arb_labeled_chain() -> impl Strategy<Value = Quiver> {
    (2usize..=4, 1usize..=3).prop_flat_map(|(n, k)| {
        prop::collection::vec(0usize..3, (n - 1) * k).prop_map(move |labels| {
            let mut arrows = Vec::new();
            for t in 1..n {
                for s in 0..k {
                    let v = format!("x{}", labels[(t - 1) * k + s]);
                    let id = format!("{}>{t}:{s}", t + 1);
                    arrows.push(Arrow::new(id, t + 1, t).with_label(Monomial::var(&v)));
                }
            }
            Quiver::new(n, arrows).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // quiver-core

    #[test]
    fn grading_certificate_matches_minimum_degree(q in arb_quiver(6)) {
        let min = q.arrows().iter().map(|a| q.degree_of(a)).min();
        prop_assert_eq!(q.grading_certificate().is_pass(), min.is_none_or(|d| d > 0));
    }

    #[test]
    fn paths_are_closed_under_concatenation(q in arb_quiver(4), a in 1usize..=4, b in 1usize..=4, c in 1usize..=4) {
        let n = q.n();
        let (a, b, c) = ((a - 1) % n + 1, (b - 1) % n + 1, (c - 1) % n + 1);
        let ac: BTreeSet<Path> = q.enumerate_paths(a, c, 4).unwrap().into_iter().collect();
        for p in q.enumerate_paths(a, b, 2).unwrap() {
            for r in q.enumerate_paths(b, c, 2).unwrap() {
                let joined = p.concat(&r).unwrap();
                prop_assert_eq!(joined.len(), p.len() + r.len());
                prop_assert!(ac.contains(&joined));
            }
        }
    }

    #[test]
    fn derived_binomials_are_sign_symmetric(q in arb_labeled_chain()) {
        let rels = q.derive_binomial_relations().unwrap();
        let canon: BTreeSet<String> = rels.iter().map(|r| format!("{:?}", r.canonical())).collect();
        for r in &rels {
            prop_assert_eq!(r.terms().len(), 2);
            let (p, s) = (&r.terms()[0].1, &r.terms()[1].1);
            let swapped = Relation::binomial(s.clone(), p.clone()).unwrap();
            prop_assert_eq!(&swapped.canonical(), &r.negated().canonical());
            let key = format!("{:?}", swapped.negated().canonical());
            prop_assert!(canon.contains(&key));
            prop_assert!(p.len() >= 2 && s.len() >= 2);
            prop_assert_eq!(q.path_label(p).unwrap(), q.path_label(s).unwrap());
        }
    }

    // repvar

    #[test]
    fn torus_action_laws(
        (q, p, g, h) in arb_quiver_point().prop_flat_map(|(q, p)| {
            let n = q.n();
            (Just(q), Just(p), arb_torus(n), arb_torus(n))
        })
    ) {
        let n = q.n();
        let gh = g.compose(&h).unwrap();
        prop_assert_eq!(
            p.torus_act(&q, &gh).unwrap(),
            p.torus_act(&q, &h).unwrap().torus_act(&q, &g).unwrap()
        );
        prop_assert_eq!(&p.torus_act(&q, &TorusElement::identity(n)).unwrap(), &p);
        let scalar = TorusElement::new(vec![g.get(1).clone(); n]).unwrap();
        prop_assert_eq!(&p.torus_act(&q, &scalar).unwrap(), &p);
        let moved = p.torus_act(&q, &g).unwrap();
        prop_assert_eq!(moved.vanishing_pattern(&q), p.vanishing_pattern(&q));
    }

    #[test]
    fn relations_survive_torus_action(e in arb_entry(), seed in 0u64..1000) {
        let q = e.quiver();
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let values: Vec<Rational> = (0..q.arrows().len()).map(|_| rat(rng.gen_range(-1..=1))).collect();
        let p = RepresentationPoint::new(q, values).unwrap();
        let g = TorusElement::new((0..q.n()).map(|_| ratio(rng.gen_range(1..=4), rng.gen_range(1..=4))).collect()).unwrap();
        prop_assert_eq!(p.satisfies_relations(q), p.torus_act(q, &g).unwrap().satisfies_relations(q));
    }

    // stability

    #[test]
    fn closure_family_equals_brute_force(q in arb_quiver(12).prop_flat_map(|q| { let p = arb_point(&q); (Just(q), p) })) {
        let (q, p) = q;
        let brute = subrep_supports_with_cap(&q, &p, 12).unwrap();
        let fast = supports_from_closures(&q, &p).unwrap();
        prop_assert_eq!(&brute, &fast);
        prop_assert!(brute.contains(NodeSet::empty()));
        prop_assert!(brute.contains(NodeSet::full(q.n())));
    }

    #[test]
    fn support_families_are_lattices(q in arb_quiver(8).prop_flat_map(|q| { let p = arb_point(&q); (Just(q), p) })) {
        let (q, p) = q;
        prop_assert!(subrep_supports(&q, &p).unwrap().is_lattice());
    }

    #[test]
    fn verdicts_are_torus_invariant_and_nested(
        (q, p) in arb_quiver_point(),
        chi_seed in prop::collection::vec(-3i64..=3, 6),
        t in prop::collection::vec(arb_nonzero(), 6),
    ) {
        let n = q.n();
        let mut chi = chi_seed[..n].to_vec();
        let s: i64 = chi.iter().sum();
        chi[0] -= s;
        let chi = Character::new(chi).unwrap();
        let g = TorusElement::new(t[..n].to_vec()).unwrap();
        let before = stability_report(&q, &p, &chi).unwrap();
        let after = stability_report(&q, &p.torus_act(&q, &g).unwrap(), &chi).unwrap();
        prop_assert_eq!(&before, &after);
        prop_assert!(!before.stable || before.semistable);
        prop_assert_eq!(before.semistable, is_semistable(&q, &p, &chi).unwrap());
    }

    #[test]
    fn weights_give_zero_sum_characters(m in (1usize..=8).prop_flat_map(arb_weights)) {
        let chi = character_from_weights(&m);
        prop_assert_eq!(chi.values().iter().sum::<i64>(), 0);
    }

    #[test]
    fn certificates_imply_verdicts(e in prop::sample::select(&["p2", "pn(3)", "f1", "p1xp1"][..]).prop_map(|n| get_entry(n).unwrap()), seed in any::<u64>()) {
        use rand::SeedableRng;
        let q = e.quiver();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        // Sweep every 0/1 weight matrix supported on the upper triangle.
        let n = q.n();
        let slots: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
        let points: Vec<RepresentationPoint> = (0..5)
            .map(|_| e.tautological_point(&e.random_cox_point(&mut rng, 3), None).unwrap())
            .collect();
        for mask in 1u32..(1 << slots.len()).min(64) {
            let entries: Vec<(u64, usize, usize)> = slots
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &(i, j))| (1, i, j))
                .collect();
            let m = WeightMatrix::from_entries(n, &entries).unwrap();
            let chi = character_from_weights(&m);
            let good = certify_good(q, &m).unwrap().is_certified();
            let great = certify_great(q, &m).unwrap().is_certified();
            prop_assert!(!great || good);
            for p in &points {
                let r = stability_report(q, p, &chi).unwrap();
                if good {
                    prop_assert!(r.semistable, "{} m={:?} chi={}", e.name(), entries, chi);
                }
                if great {
                    prop_assert!(r.stable, "{} m={:?} chi={}", e.name(), entries, chi);
                }
            }
        }
    }

    #[test]
    fn trivial_character_is_always_semistable((q, p) in arb_quiver_point()) {
        let fam = subrep_supports(&q, &p).unwrap();
        let r = verdict_from_family(&fam, &Character::zero(q.n()));
        prop_assert!(r.semistable);
        prop_assert_eq!(r.stable, q.n() == 1 || fam.len() == 2);
    }

    // helix

    #[test]
    fn anticanonical_character_adds_one_wrap_arrow(m in (2usize..=6).prop_flat_map(arb_weights)) {
        let n = m.n();
        let bumped = m.incremented(1, n).unwrap();
        prop_assert_eq!(anticanonical_character(&m), character_from_weights(&bumped));
    }

    #[test]
    fn degree_check_is_additive(
        name in prop::sample::select(&["p2", "f1", "p1xp1", "p1xp1-spiral"][..]),
        m1 in arb_weights(4),
        m2 in arb_weights(4),
    ) {
        let e = get_entry(name).unwrap();
        let q = e.quiver();
        let n = q.n();
        let crop = |m: &WeightMatrix| WeightMatrix::new(m.rows()[..n].iter().map(|r| r[..n].to_vec()).collect()).unwrap();
        let (m1, m2) = (crop(&m1), crop(&m2));
        let a = check_line_bundle_degrees(q, &m1).unwrap();
        let b = check_line_bundle_degrees(q, &m2).unwrap();
        let sum = check_line_bundle_degrees(q, &m1.sum(&m2).unwrap()).unwrap();
        prop_assert_eq!(&sum.weights_degree, &(&a.weights_degree + &b.weights_degree));
        prop_assert_eq!(&sum.wrap_degree, &a.wrap_degree);
    }

    #[test]
    fn spiral_extension_keeps_positive_grading(q in arb_labeled_chain(), added in 1usize..=4) {
        let ext = extend_spiral(&q, added).unwrap();
        prop_assert!(ext.grading_certificate().is_pass());
        prop_assert!(ext.arrows().iter().all(|a| ext.degree_of(a) == 1));
        prop_assert_eq!(ext.relations().len(), q.relations().len());
    }

    #[test]
    fn helix_points_restrict_to_base_points(x in -3i64..=3, y in -3i64..=3, z in -3i64..=3, l in -3i64..=3, g in prop::collection::vec(arb_nonzero(), 3)) {
        prop_assume!(x != 0 || y != 0 || z != 0);
        let e = get_entry("p2-helix").unwrap();
        let base = e.base_quiver().unwrap();
        let p = e.tautological_point(&[rat(x), rat(y), rat(z)], Some(&rat(l))).unwrap();
        let p = p.torus_act(e.quiver(), &TorusElement::new(g).unwrap()).unwrap();
        prop_assert!(p.satisfies_relations(e.quiver()));
        let r = restrict_to_base(e.quiver(), &base, &p).unwrap();
        prop_assert!(r.satisfies_relations(&base));
        let p2 = get_entry("p2").unwrap();
        prop_assert!(r.satisfies_relations(p2.quiver()));
    }

    // invariants

    #[test]
    fn cycle_values_are_torus_and_rotation_invariant((q, p) in arb_quiver_point(), t in prop::collection::vec(arb_nonzero(), 6)) {
        let g = TorusElement::new(t[..q.n()].to_vec()).unwrap();
        let moved = p.torus_act(&q, &g).unwrap();
        let cycles = enumerate_cycles(&q, 4).unwrap();
        for c in &cycles {
            let v = evaluate_invariant(c, &p).unwrap();
            prop_assert_eq!(&evaluate_invariant(c, &moved).unwrap(), &v);
            for k in 0..c.len() {
                prop_assert_eq!(&evaluate_invariant(&c.rotated(&q, k), &p).unwrap(), &v);
            }
        }
        for a in &cycles {
            for b in &cycles {
                if let Some(ab) = a.concat(b) {
                    prop_assert_eq!(
                        evaluate_invariant(&ab, &p).unwrap(),
                        evaluate_invariant(a, &p).unwrap() * evaluate_invariant(b, &p).unwrap()
                    );
                }
            }
        }
    }

    // catalog

    #[test]
    fn tautological_points_satisfy_relations(e in arb_entry(), seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let cox = e.random_cox_point(&mut rng, 4);
        let fiber = e.has_fiber().then(|| rat(seed as i64 % 5));
        let p = e.tautological_point(&cox, fiber.as_ref()).unwrap();
        prop_assert!(p.satisfies_relations(e.quiver()));
    }

    #[test]
    fn cox_rescaling_is_a_torus_action(
        (e, (cox, fiber)) in arb_entry().prop_flat_map(|e| { let c = arb_cox(&e); (Just(e), c) }),
        t in prop::collection::vec(arb_nonzero(), 2),
        chi in arb_character(4),
    ) {
        let q = e.quiver();
        let rank = q.canonical().unwrap().rank();
        let t = &t[..rank];
        let p = e.tautological_point(&cox, fiber.as_ref()).unwrap();
        let (cox2, fiber2) = e.rescale_cox(&cox, fiber.as_ref(), t).unwrap();
        let p2 = e.tautological_point(&cox2, fiber2.as_ref()).unwrap();
        let g = e.induced_torus_element(t).unwrap();
        prop_assert_eq!(&p.torus_act(q, &g).unwrap(), &p2);
        if q.n() == chi.n() {
            prop_assert_eq!(stability_report(q, &p, &chi).unwrap(), stability_report(q, &p2, &chi).unwrap());
        }
    }
}

/// Independent count of Cox monomials of a given Picard degree, by exhaustive search.
fn cox_monomials_of_degree(e: &CatalogEntry, degree: &PicVector, bound: u32) -> usize {
    let vars = e.cox_variables();
    let mut count = 0;
    let mut exps = vec![0u32; vars.len()];
    loop {
        let d = vars
            .iter()
            .zip(&exps)
            .fold(PicVector::zero(degree.rank()), |acc, (v, &k)| {
                &acc + &v.degree.scaled(i64::from(k))
            });
        if &d == degree {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == exps.len() {
                return count;
            }
            exps[k] += 1;
            if exps[k] <= bound {
                break;
            }
            exps[k] = 0;
            k += 1;
        }
    }
}

#[test]
fn hom_dimensions_match_cox_monomial_counts() {
    for name in ["p2", "pn(3)", "f1", "p1xp1", "p2-helix", "p1xp1-spiral"] {
        let e = get_entry(name).unwrap();
        let q = e.quiver();
        let pic = q.pic().unwrap();
        for i in 1..=q.n() {
            for j in 1..=q.n() {
                let d = &pic[j - 1] - &pic[i - 1];
                let expected = cox_monomials_of_degree(&e, &d, 6);
                assert_eq!(
                    e.hom_dimensions()[i - 1][j - 1],
                    expected,
                    "{name} Hom(E{i},E{j})"
                );
                assert_eq!(
                    q.path_monomial_count(i, j, 0, q.n()).unwrap(),
                    expected,
                    "{name} paths {j}->{i}"
                );
            }
        }
    }
}

#[test]
fn stored_relations_are_admissible() {
    for name in ["p2", "pn(4)", "f1", "p1xp1", "p2-helix", "p1xp1-spiral"] {
        let q = get_entry(name).unwrap().quiver().clone();
        for r in q.relations() {
            assert!(r.terms().iter().all(|(c, p)| p.len() >= 2 && *c != int(0)));
            assert!(r
                .terms()
                .iter()
                .all(|(_, p)| p.source() == r.source() && p.target() == r.target()));
        }
    }
}

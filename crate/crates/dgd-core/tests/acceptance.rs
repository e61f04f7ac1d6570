//! End-to-end acceptance gate: every guarantee the library advertises,
//! checked at its stated tolerance on the builtin group list.

use std::time::Instant;

use dgd_core::double::{Double, DoubleElement, RVariant, Suite};
use dgd_core::group::FiniteGroup;
use dgd_core::linalg::{self, CMat};
use dgd_core::mackey::{
    braid_operator, braiding_naturality_deviation, braiding_ybe_deviation, bubble_word,
    flip_braiding, insertion_word, nichols_degree_dims_from_braiding, permutations,
    Classification,
};
use dgd_core::modular::Modular;
use dgd_core::tol;
use dgd_core::RunConfig;

const TOL: f64 = 1e-9;

fn axiom_groups() -> Vec<FiniteGroup> {
    let c2 = FiniteGroup::cyclic(2).unwrap();
    vec![
        FiniteGroup::cyclic(1).unwrap(),
        FiniteGroup::cyclic(2).unwrap(),
        FiniteGroup::cyclic(4).unwrap(),
        FiniteGroup::direct_product(&c2, &c2),
        FiniteGroup::symmetric(3).unwrap(),
        FiniteGroup::dihedral(4).unwrap(),
        FiniteGroup::quaternion8(),
    ]
}

fn builtin_groups() -> Vec<FiniteGroup> {
    let mut gs = axiom_groups();
    gs.push(FiniteGroup::alternating(4).unwrap());
    gs.push(FiniteGroup::symmetric(4).unwrap());
    gs
}

#[test]
fn criterion_1_axiom_suites_pass_on_all_small_groups() {
    let start = Instant::now();
    let cfg = RunConfig::default();
    let mut worst = 0.0f64;
    for g in axiom_groups() {
        let d = Double::new(&g);
        let report = d.verify_axioms(&Suite::all(), &cfg);
        for s in &report.suites {
            assert!(
                s.pass && s.max_deviation <= TOL,
                "group {}, suite {}: deviation {:.3e}",
                g.name(),
                s.suite,
                s.max_deviation
            );
            worst = worst.max(s.max_deviation);
        }
        assert!(report.all_pass);
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "budget exceeded: {elapsed:?}");
    println!(
        "PASS axiom suites on 7 groups: max deviation {worst:.3e} in {:.1}s",
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_2_closed_forms_cross_check_exhaustively() {
    let cfg = RunConfig::default();
    let mut worst = 0.0f64;
    for g in axiom_groups() {
        let d = Double::new(&g);
        for variant in [RVariant::Standard, RVariant::Prime] {
            // Monodromy closed form equals (tau R) R.
            let r = d.r_matrix(variant);
            let tau_r = dgd_core::double::swap(&r);
            let q = tau_r.mul(&r, &g);
            worst = worst.max(q.distance(&d.monodromy_q(variant)));
        }
        // R' is the inverse of tau R (both sides).
        let tau_r = dgd_core::double::swap(&d.r_matrix(RVariant::Standard));
        let r_prime = d.r_matrix(RVariant::Prime);
        worst = worst.max(tau_r.mul(&r_prime, &g).distance(&d.unit2()));
        worst = worst.max(r_prime.mul(&tau_r, &g).distance(&d.unit2()));
        // S^2 = id and u central, exhaustively over the basis.
        let u = d.drinfeld_u(RVariant::Standard);
        for h in g.elements() {
            for a in g.elements() {
                let b = DoubleElement::basis([(h, a)]);
                worst = worst.max(d.antipode(&d.antipode(&b)).distance(&b));
                worst = worst.max(d.multiply(&u, &b).distance(&d.multiply(&b, &u)));
            }
        }
        // Center dimension equals the commuting-pair orbit count.
        let orbits = g.commuting_pair_orbits();
        assert_eq!(
            d.center_dimension_certified(cfg.seed),
            orbits.orbit_count(),
            "group {}",
            g.name()
        );
    }
    assert!(worst <= TOL, "max deviation {worst:.3e}");
    println!("PASS closed-form cross-checks on 7 groups: max deviation {worst:.3e}");
}

#[test]
fn criterion_3_classification_counts_match_on_groups_up_to_order_24() {
    let start = Instant::now();
    for g in builtin_groups() {
        let cl = Classification::new(&g).unwrap();
        assert_eq!(
            cl.num_labels(),
            cl.orbits.orbit_count(),
            "label count vs orbit count for {}",
            g.name()
        );
        let sum_sq: usize = cl
            .labels
            .iter()
            .map(|&l| cl.module_dimension(l) * cl.module_dimension(l))
            .sum();
        assert_eq!(sum_sq, g.order() * g.order(), "dimension sum rule for {}", g.name());
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 30, "budget exceeded: {elapsed:?}");
    println!(
        "PASS classification counts on 9 groups up to order 24 in {:.1}s",
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_4_induced_traces_match_characters_and_gram_is_identity() {
    let mut groups = axiom_groups();
    groups.push(FiniteGroup::alternating(4).unwrap());
    let mut worst = 0.0f64;
    for g in groups {
        let cl = Classification::new(&g).unwrap();
        for &label in &cl.labels {
            let module = cl.induce_module(label, tol::DEFAULT_SEED).unwrap();
            let induced = module.character(&cl.orbits);
            let closed = cl.irreducible_character(label);
            let dev = induced.distance(&closed);
            assert!(dev <= TOL, "group {}, label {:?}: {dev:.3e}", g.name(), label);
            worst = worst.max(dev);
        }
        let ortho = cl.verify_character_orthonormality(TOL);
        assert!(ortho.pass, "group {}: gram dev {:.3e}", g.name(), ortho.gram_deviation);
        worst = worst.max(ortho.gram_deviation);
    }
    println!("PASS induced traces and character Gram on groups up to order 12: max deviation {worst:.3e}");
}

#[test]
fn criterion_5_modular_matrices_satisfy_relations_on_all_builtins() {
    let mut worst = 0.0f64;
    for g in builtin_groups() {
        let cl = Classification::new(&g).unwrap();
        let m = Modular::new(&cl);
        let data = m.modular_data(TOL).unwrap();
        for i in 0..data.t.nrows() {
            worst = worst.max((data.t[(i, i)].norm() - 1.0).abs());
        }
        let s2 = &data.s * &data.s;
        let s4 = &s2 * &s2;
        worst = worst.max(linalg::dev_from_identity(&s4));
        let st = &data.s * &data.t;
        let st3 = &st * &st * &st;
        worst = worst.max(linalg::max_abs(&(&s2 - &st3)));
        worst = worst.max(linalg::dev_from_unitary(&data.ft));
        worst = worst.max(linalg::dev_from_hermitian(&data.ft));
        worst = worst.max(linalg::dev_from_identity(&(&data.ft * &data.ft)));
        assert!(worst <= TOL, "group {}: deviation {worst:.3e}", g.name());
    }
    println!("PASS modular matrix relations on 9 groups: max deviation {worst:.3e}");
}

#[test]
fn criterion_6_verlinde_formula_reproduces_bruteforce_fusion() {
    let start = Instant::now();
    let c2 = FiniteGroup::cyclic(2).unwrap();
    let groups = vec![
        FiniteGroup::cyclic(2).unwrap(),
        FiniteGroup::direct_product(&c2, &c2),
        FiniteGroup::symmetric(3).unwrap(),
        FiniteGroup::dihedral(4).unwrap(),
        FiniteGroup::quaternion8(),
        FiniteGroup::alternating(4).unwrap(),
        FiniteGroup::symmetric(4).unwrap(),
    ];
    for g in groups {
        let cl = Classification::new(&g).unwrap();
        let m = Modular::new(&cl);
        let data = m.modular_data(TOL).unwrap();
        let brute = m.fusion_bruteforce().unwrap();
        let verlinde = m.verlinde_fusion(&data).unwrap();
        assert_eq!(brute.n, verlinde.n, "fusion tensors differ for {}", g.name());
        assert!(brute.residual <= 1e-6 && verlinde.residual <= 1e-6, "group {}", g.name());
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 120, "budget exceeded: {elapsed:?}");
    println!(
        "PASS Verlinde = brute-force fusion on 7 groups in {:.1}s",
        elapsed.as_secs_f64()
    );
}

#[test]
fn criterion_7_fourier_identity_battery_on_random_functions() {
    let cfg = RunConfig::default();
    let mut worst = 0.0f64;
    for g in builtin_groups() {
        let cl = Classification::new(&g).unwrap();
        let m = Modular::new(&cl);
        let report = m.verify_identities(&cfg).unwrap();
        for item in &report.items {
            assert!(
                item.pass && item.max_deviation <= TOL,
                "group {}, item {}: {:.3e}",
                g.name(),
                item.suite,
                item.max_deviation
            );
            worst = worst.max(item.max_deviation);
        }
    }
    println!("PASS Fourier identity battery (100 random functions per group): max deviation {worst:.3e}");
}

#[test]
fn criterion_8_braiding_satisfies_ybe_and_commutes_with_action() {
    let mut worst = 0.0f64;
    for g in axiom_groups() {
        if g.order() > 8 {
            continue;
        }
        let cl = Classification::new(&g).unwrap();
        let modules: Vec<_> = cl
            .labels
            .iter()
            .map(|&l| cl.induce_module(l, tol::DEFAULT_SEED).unwrap())
            .collect();
        for v in &modules {
            worst = worst.max(braiding_ybe_deviation(v));
        }
        for v in &modules {
            for w in &modules {
                worst = worst.max(braiding_naturality_deviation(&g, v, w));
            }
        }
        assert!(worst <= TOL, "group {}: deviation {worst:.3e}", g.name());
    }
    println!("PASS braiding YBE and naturality on all irreducible modules, |G| <= 8: max deviation {worst:.3e}");
}

#[test]
fn criterion_9_symmetrizer_ranks_match_binomials_exactly() {
    fn binomial(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }
    for d in 1..=3usize {
        let flip = flip_braiding(d);
        let dims = nichols_degree_dims_from_braiding(&flip, d, 5, 300).unwrap();
        let expect: Vec<usize> = (1..=5).map(|n| binomial(d + n - 1, n)).collect();
        assert_eq!(dims, expect, "symmetric algebra dims for d = {d}");
        let neg = CMat::from_fn(d * d, d * d, |i, j| -flip[(i, j)]);
        let dims_neg = nichols_degree_dims_from_braiding(&neg, d, 5, 300).unwrap();
        let expect_neg: Vec<usize> = (1..=5).map(|n| binomial(d, n)).collect();
        assert_eq!(dims_neg, expect_neg, "exterior algebra dims for d = {d}");
    }
    // Reduced-word independence: both reduced-word families give the same
    // braid operator for every permutation in S4.
    let c = flip_braiding(2);
    for perm in permutations(4) {
        let w1 = bubble_word(&perm);
        let w2 = insertion_word(&perm);
        let op1 = braid_operator(&c, 2, 4, &w1);
        let op2 = braid_operator(&c, 2, 4, &w2);
        assert!(linalg::max_abs(&(op1 - op2)) <= 1e-12, "word mismatch for {perm:?}");
    }
    println!("PASS symmetrizer ranks match binomial oracles exactly for d <= 3, n <= 5");
}

use hgp_reduce::codes::{canonical_generator, random_ldpc};
use hgp_reduce::coloring::{check_adjacency_graph, color_code, product_coloring, ProductColoring};
use hgp_reduce::hgp::{hgp_k, prepare_hgp};
use hgp_reduce::homomorphism::{augment, augmentation_keeps_adjacency, puncture};
use hgp_reduce::planner::{build_matching_graph, choose_schedule, fold_symmetric_schedule, LeftVertex};
use hgp_reduce::reducer::{apply_reduction, build_reduction, weight_report, Pauli, ReductionPlan};
use hgp_reduce::sescheduler::{enumerate_hooks, random_schedule, split_schedule, CnotSchedule};
use hgp_reduce::verifier::{certify_distance, verify_css, DistanceStatus, verify_k, verify_logical_basis};
use hgp_reduce::{BitMatrix, ClassicalCode, CssCode, QubitCoord};
use proptest::prelude::*;

const SHAPES: [(usize, usize, usize); 4] = [(3, 4, 8), (3, 4, 12), (3, 5, 10), (3, 6, 12)];

/// First full-rank draw at or after `seed`.
fn code(shape: usize, seed: u64) -> ClassicalCode {
    let (dv, dc, n) = SHAPES[shape];
    (0..)
        .map(|i| random_ldpc(n, dv, dc, seed.wrapping_add(i)).unwrap())
        .find(ClassicalCode::is_full_rank)
        .unwrap()
}

fn pair() -> impl Strategy<Value = (ClassicalCode, ClassicalCode)> {
    (0..SHAPES.len(), 0..SHAPES.len(), any::<u64>(), any::<u64>())
        .prop_map(|(a, b, s, t)| (code(a, s), code(b, t)))
}

struct Pipeline {
    code: CssCode,
    pc: ProductColoring,
    plan: ReductionPlan,
    reduced: CssCode,
}

fn pipeline(c1: &ClassicalCode, c2: &ClassicalCode, seed: u64) -> Pipeline {
    let code = prepare_hgp(c1, c2).unwrap();
    let pc = product_coloring(&color_code(c1, seed), &color_code(c2, seed), &code).unwrap();
    let plan = build_reduction(&code, &pc, &choose_schedule(&pc)).unwrap();
    let reduced = apply_reduction(&code, &plan).unwrap();
    Pipeline { code, pc, plan, reduced }
}

fn brute_best(pc: &ProductColoring) -> usize {
    let g = build_matching_graph(pc);
    let mut best = 0;
    for mask in 0u32..1 << g.edges.len() {
        let chosen: Vec<_> = (0..g.edges.len()).filter(|&e| mask >> e & 1 == 1).map(|e| g.edges[e]).collect();
        let lefts: std::collections::BTreeSet<_> = chosen.iter().map(|e| e.left).collect();
        let groups: std::collections::BTreeSet<_> = chosen.iter().map(|e| e.group).collect();
        if lefts.len() == chosen.len() && groups.len() == chosen.len() {
            best = best.max(chosen.iter().map(|e| e.weight).sum());
        }
    }
    best
}

fn schedule_covers(code: &CssCode, s: &CnotSchedule) -> bool {
    for (kind, h) in [(Pauli::X, &code.hx), (Pauli::Z, &code.hz)] {
        let mut seen = BitMatrix::zeros(h.rows(), h.cols());
        for round in s.rounds(kind) {
            let mut checks = std::collections::BTreeSet::new();
            let mut qubits = std::collections::BTreeSet::new();
            for &(c, q) in round {
                if !checks.insert(c) || !qubits.insert(q) || seen.get(c, q) {
                    return false;
                }
                seen.set(c, q, true);
            }
        }
        if &seen != h {
            return false;
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn product_structure((c1, c2) in pair()) {
        let code = prepare_hgp(&c1, &c2).unwrap();
        prop_assert!(verify_css(&code).pass);
        prop_assert_eq!(code.k(), hgp_k(&c1, &c2));
        prop_assert_eq!(code.k(), c1.k() * c2.k() + c1.k_transpose() * c2.k_transpose());
        let l = &code.layout;
        for q in 0..code.n() {
            let coord = l.coord(q);
            prop_assert_eq!(l.original_index(coord), q);
            let expect = match coord {
                QubitCoord::Bit { row, col } => row * c2.n() + col,
                QubitCoord::Check { row, col } => c1.n() * c2.n() + row * c2.m() + col,
            };
            prop_assert_eq!(q, expect);
            prop_assert_eq!(coord.is_bit_type(), q < c1.n() * c2.n());
        }
        let t = c1.tanner_graph();
        for c in 0..c1.m() {
            for b in 0..c1.n() {
                prop_assert_eq!(t.has_edge(c, b), c1.h.get(c, b));
            }
        }
        prop_assert!(verify_logical_basis(&code).unwrap().pass);
    }

    #[test]
    fn colorings_and_groups((c1, c2) in pair(), seed in 0u64..8) {
        let col1 = color_code(&c1, seed);
        let col2 = color_code(&c2, seed);
        col1.validate(&c1).unwrap();
        prop_assert!(col1.validate_graph(&check_adjacency_graph(&c1)));
        let code = prepare_hgp(&c1, &c2).unwrap();
        let pc = product_coloring(&col1, &col2, &code).unwrap();
        let mut all: Vec<usize> = pc.groups.iter().flatten().copied().collect();
        all.sort_unstable();
        let check_type: Vec<usize> = (c1.n() * c2.n()..code.n()).collect();
        prop_assert_eq!(all, check_type);
        for i in 0..pc.chi1 {
            for j in 0..pc.chi2 {
                for &q in pc.group(i, j) {
                    let QubitCoord::Check { row, col } = code.layout.coord(q) else {
                        return Err(TestCaseError::fail("bit-type qubit in a group"));
                    };
                    prop_assert_eq!((col1.color_of[row], col2.color_of[col]), (i, j));
                }
            }
        }
    }

    #[test]
    fn matching_graph_and_schedule((c1, c2) in pair()) {
        let code = prepare_hgp(&c1, &c2).unwrap();
        let pc = product_coloring(&color_code(&c1, 0), &color_code(&c2, 0), &code).unwrap();
        let g = build_matching_graph(&pc);
        let mut expected = Vec::new();
        for i in 0..pc.chi1 {
            for j in 0..pc.chi2 {
                if pc.size(i, j) > 0 {
                    expected.push((LeftVertex::X(i), (i, j), pc.size(i, j)));
                    expected.push((LeftVertex::Z(j), (i, j), pc.size(i, j)));
                }
            }
        }
        let got: Vec<_> = g.edges.iter().map(|e| (e.left, e.group, e.weight)).collect();
        prop_assert_eq!(got, expected);
        let s = choose_schedule(&pc);
        s.check_feasible(&pc).unwrap();
        prop_assert!(s.x_groups.iter().all(|g| !s.z_groups.contains(g)));
        prop_assert_eq!(&choose_schedule(&pc), &s);
        if g.edges.len() <= 16 {
            prop_assert_eq!(s.removed_count(&pc), brute_best(&pc));
        }
    }

    #[test]
    fn reduction_invariants((c1, c2) in pair(), seed in 0u64..4) {
        let p = pipeline(&c1, &c2, seed);
        let plan = &p.plan;
        prop_assert_eq!(plan.v.shape(), (p.code.n(), p.reduced.n()));
        prop_assert!(plan.v.col_weights().iter().all(|&w| w == 1));
        prop_assert_eq!(plan.v.row_weights().iter().filter(|&&w| w == 1).count(), plan.kept.len());
        for (t, &q) in plan.kept.iter().enumerate() {
            prop_assert!(plan.v.get(q, t));
        }
        prop_assert_eq!(plan.removed.len() + plan.kept.len(), p.code.n());
        prop_assert!(plan.wx.is_full_row_rank() && plan.wz.is_full_row_rank());
        for star in &plan.stars {
            let (w, h) = match star.kind {
                Pauli::X => (&plan.wx, &p.code.hx),
                Pauli::Z => (&plan.wz, &p.code.hz),
            };
            let combined = w.matmul(h).unwrap();
            for r in 0..combined.rows() {
                prop_assert!(!combined.get(r, star.qubit));
            }
        }
        prop_assert!(verify_css(&p.reduced).pass);
        prop_assert!(verify_k(&p.code, &p.reduced).pass);
        prop_assert!(verify_logical_basis(&p.reduced).unwrap().pass);
        let w = weight_report(&p.code, &p.reduced).unwrap();
        prop_assert!(w.w_q_reduced <= 2 * w.w_q && w.w_c_reduced <= 2 * (w.w_c - 1));
        prop_assert_eq!(p.code.n() - p.reduced.n(), plan.schedule.removed_count(&p.pc));
    }

    #[test]
    fn schedules_are_valid_and_deterministic((c1, c2) in pair(), seed in any::<u64>()) {
        let p = pipeline(&c1, &c2, 0);
        let split = split_schedule(&p.reduced, &p.plan).unwrap();
        split.validate(&p.reduced).unwrap();
        prop_assert!(schedule_covers(&p.reduced, &split));
        prop_assert_eq!(&split_schedule(&p.reduced, &p.plan).unwrap(), &split);
        let random = random_schedule(&p.reduced, seed);
        random.validate(&p.reduced).unwrap();
        prop_assert!(schedule_covers(&p.reduced, &random));
        prop_assert_eq!(random_schedule(&p.reduced, seed), random);
    }

    #[test]
    fn unreduced_hooks_stay_on_one_line((c1, c2) in pair(), seed in any::<u64>()) {
        let code = prepare_hgp(&c1, &c2).unwrap();
        let s = random_schedule(&code, seed);
        for kind in [Pauli::X, Pauli::Z] {
            for hook in enumerate_hooks(&code, &s, kind) {
                prop_assert!(hook.lines <= 1, "{:?}", hook);
            }
        }
    }

    #[test]
    fn split_hooks_stay_on_one_line((c1, c2) in pair()) {
        let p = pipeline(&c1, &c2, 0);
        let s = split_schedule(&p.reduced, &p.plan).unwrap();
        for kind in [Pauli::X, Pauli::Z] {
            for hook in enumerate_hooks(&p.reduced, &s, kind) {
                prop_assert!(hook.lines <= 1, "{:?}", hook);
            }
        }
    }

    #[test]
    fn augmentation_keeps_check_adjacency(shape in 0..SHAPES.len(), seed in any::<u64>(), pick in any::<u64>()) {
        let c = code(shape, seed);
        let g = canonical_generator(&c).unwrap();
        prop_assume!(g.info_bits.len() >= 2);
        let chosen: Vec<usize> = g.info_bits.iter().enumerate()
            .filter(|(i, _)| pick >> (i % 64) & 1 == 1)
            .map(|(_, &b)| b)
            .collect();
        prop_assume!(!chosen.is_empty());
        let row = BitMatrix::from_supports(1, c.n(), &[chosen]).unwrap();
        let aug = augment(&c, &row).unwrap();
        prop_assert!(augmentation_keeps_adjacency(&c, &aug));
        prop_assert_eq!(aug.k(), c.k() - 1);
        prop_assert!(aug.is_full_rank() || !c.is_full_rank());
    }

    #[test]
    fn certified_distances_follow_the_carried_formula(s in any::<u64>(), t in any::<u64>()) {
        let (c1, c2) = (code(0, s), code(2, t));
        let code = prepare_hgp(&c1, &c2).unwrap();
        prop_assert!(code.n() <= 120);
        for (side, d) in [(Pauli::X, code.d_x.unwrap()), (Pauli::Z, code.d_z.unwrap())] {
            let d = d.exact().unwrap();
            prop_assume!(d <= 5);
            let rep = certify_distance(&code, side, d, d).unwrap();
            prop_assert_eq!(&rep.status, &DistanceStatus::Confirmed(d), "{:?} {:?}", side, rep);
        }
    }

    #[test]
    fn symmetric_inputs_certify_alike(shape in 0..SHAPES.len(), seed in any::<u64>()) {
        let c = code(shape, seed);
        let code = prepare_hgp(&c, &c).unwrap();
        let col = color_code(&c, 0);
        let pc = product_coloring(&col, &col, &code).unwrap();
        let fold = build_reduction(&code, &pc, &fold_symmetric_schedule(&pc).unwrap()).unwrap();
        for target in [code.clone(), apply_reduction(&code, &fold).unwrap()] {
            let d = target.d_x.unwrap().value();
            prop_assert_eq!(d, target.d_z.unwrap().value());
            let x = certify_distance(&target, Pauli::X, d, 3).unwrap();
            let z = certify_distance(&target, Pauli::Z, d, 3).unwrap();
            prop_assert_eq!((x.upper, &x.status, x.searched), (z.upper, &z.status, z.searched));
        }
    }
}

#[test]
fn puncturing_keeps_rank_on_seeded_codes() {
    let mut checked = 0;
    for seed in 0..50u64 {
        let c = code(seed as usize % SHAPES.len(), seed);
        let g = canonical_generator(&c).unwrap();
        let bits: Vec<usize> = g.info_bits.iter().copied().step_by(2).collect();
        let p = puncture(&c, &bits).unwrap();
        assert_eq!(p.rank(), c.rank(), "seed {seed}");
        assert_eq!(p.n(), c.n() - bits.len());
        assert_eq!(p.k(), c.k() - bits.len());
        checked += 1;
    }
    assert_eq!(checked, 50);
}

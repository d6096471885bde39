use proptest::prelude::*;

use persilat::diagram::{check_commutativity, persistence_rank, DiagramBuilder};
use persilat::heyting::{eval_formula, parse_formula, Formula, HeytingAlgebra, Valuation};
use persilat::homology::{diagram_from_filtration, induced_map, persistent_betti_oracle, FilteredComplex};
use persilat::lattice::{dm_completion, ElementInfo, Elem, Lattice, Poset};
use persilat::linalg::{image_basis, kernel_basis, pullback, pushout, rank, solve_matrix, FpMatrix};
use persilat::shapes::{zigzag_completion_diagram, ZigzagModule, ZigzagSpace};

fn prime() -> impl Strategy<Value = u32> {
    prop_oneof![Just(2u32), Just(3), Just(5)]
}

fn matrix(p: u32, rows: usize, cols: usize) -> impl Strategy<Value = FpMatrix> {
    proptest::collection::vec(0..p, rows * cols).prop_map(move |d| FpMatrix::new(rows, cols, p, d).unwrap())
}

fn any_matrix() -> impl Strategy<Value = FpMatrix> {
    (prime(), 0..6usize, 0..6usize).prop_flat_map(|(p, r, c)| matrix(p, r, c))
}

/// `f: A → C` and `g: B → C` over a common field.
fn cospan() -> impl Strategy<Value = (FpMatrix, FpMatrix)> {
    (prime(), 1..6usize, 0..6usize, 0..6usize).prop_flat_map(|(p, c, a, b)| (matrix(p, c, a), matrix(p, c, b)))
}

/// `f: C → A` and `g: C → B` over a common field.
fn span() -> impl Strategy<Value = (FpMatrix, FpMatrix)> {
    (prime(), 1..6usize, 0..6usize, 0..6usize).prop_flat_map(|(p, c, a, b)| (matrix(p, a, c), matrix(p, b, c)))
}

/// Random strict order on up to `n` points, as pairs `i < j`.
fn poset(max: usize) -> impl Strategy<Value = Poset> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let relations: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| bits[i * n + j])
                .collect();
            let labels = (0..n).map(|i| ElementInfo::original(format!("p{i}"))).collect();
            Poset::from_relations(labels, &relations).unwrap()
        })
    })
}

/// Lattice of down-sets of a random poset: always distributive.
fn downset_lattice(p: &Poset) -> Lattice {
    let n = p.len();
    let sets: Vec<u32> = (0u32..1 << n)
        .filter(|&s| (0..n).all(|i| s >> i & 1 == 0 || (0..n).all(|j| !p.leq(j, i) || s >> j & 1 == 1)))
        .collect();
    let labels = sets.iter().map(|s| ElementInfo::original(format!("{s:b}"))).collect();
    Lattice::from_leq(labels, |a, b| sets[a] & !sets[b] == 0).unwrap()
}

fn formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        Just(Formula::var("p")),
        Just(Formula::var("q")),
        Just(Formula::var("r")),
        Just(Formula::Bottom),
        Just(Formula::Top),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.and(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.or(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.implies(b)),
            inner.prop_map(Formula::not),
        ]
    })
}

/// Filtration of a subcomplex of the simplex on 5 vertices: each simplex
/// enters no earlier than its faces.
fn filtration() -> impl Strategy<Value = FilteredComplex> {
    (proptest::collection::vec(0..4usize, 31), proptest::collection::vec(any::<bool>(), 31), prime()).prop_map(
        |(delays, keep, p)| {
            let mut simplices: Vec<(Vec<usize>, usize)> = Vec::new();
            let mut masks: Vec<u32> = (1u32..32).collect();
            masks.sort_by_key(|m| m.count_ones());
            for (k, &mask) in masks.iter().enumerate() {
                let verts: Vec<usize> = (0..5).filter(|i| mask >> i & 1 == 1).collect();
                if verts.len() > 3 || (verts.len() > 1 && !keep[k]) {
                    continue;
                }
                let mut level = delays[k] % 3;
                let mut closed = true;
                for t in 0..verts.len() {
                    if verts.len() == 1 {
                        break;
                    }
                    let mut face = verts.clone();
                    face.remove(t);
                    match simplices.iter().find(|(s, _)| *s == face) {
                        Some((_, l)) => level = level.max(*l),
                        None => closed = false,
                    }
                }
                if closed {
                    simplices.push((verts, level));
                }
            }
            FilteredComplex::new(p, simplices).unwrap()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rank_nullity(m in any_matrix()) {
        let k = kernel_basis(&m);
        prop_assert_eq!(rank(&m) + k.cols(), m.cols());
        prop_assert!(m.mul(&k).unwrap().is_zero());
        prop_assert_eq!(image_basis(&m).cols(), rank(&m));
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn pullback_is_universal((f, g) in cospan(), t in 0..4usize, seed in any::<u64>()) {
        let pb = pullback(&f, &g).unwrap();
        let stacked = f.hstack(&g.neg()).unwrap();
        prop_assert_eq!(pb.dim(), f.cols() + g.cols() - rank(&stacked));
        let (pa, pbm) = (&pb.projections[0].1, &pb.projections[1].1);
        prop_assert_eq!(f.mul(pa).unwrap(), g.mul(pbm).unwrap());
        // A cone from T built through the apex factors uniquely back through it.
        let p = f.prime();
        let data: Vec<u32> = (0..pb.dim() * t).map(|i| ((seed >> (i % 60)) as u32 + i as u32) % p).collect();
        let u = FpMatrix::new(pb.dim(), t, p, data).unwrap();
        let (a, b) = (pa.mul(&u).unwrap(), pbm.mul(&u).unwrap());
        let legs = pa.vstack(pbm).unwrap();
        let solved = solve_matrix(&legs, &a.vstack(&b).unwrap()).unwrap().unwrap();
        prop_assert_eq!(solved, u);
        prop_assert_eq!(rank(&legs), pb.dim());
    }

    #[test]
    fn pushout_is_universal((f, g) in span(), t in 0..4usize, seed in any::<u64>()) {
        let po = pushout(&f, &g).unwrap();
        let stacked = f.vstack(&g.neg()).unwrap();
        prop_assert_eq!(po.dim(), f.rows() + g.rows() - rank(&stacked));
        let (ia, ib) = (&po.injections[0].1, &po.injections[1].1);
        prop_assert_eq!(ia.mul(&f).unwrap(), ib.mul(&g).unwrap());
        let p = f.prime();
        let data: Vec<u32> = (0..po.dim() * t).map(|i| ((seed >> (i % 60)) as u32 + 2 * i as u32) % p).collect();
        let v = FpMatrix::new(t, po.dim(), p, data).unwrap();
        let (a, b) = (v.mul(ia).unwrap(), v.mul(ib).unwrap());
        let legs = ia.hstack(ib).unwrap();
        let solved = solve_matrix(&legs.transpose(), &a.hstack(&b).unwrap().transpose()).unwrap().unwrap();
        prop_assert_eq!(solved.transpose(), v);
        prop_assert_eq!(rank(&legs), po.dim());
    }

    #[test]
    fn completion_is_a_lattice_embedding(p in poset(6)) {
        let l = dm_completion(&p, 4096).unwrap();
        let n = p.len();
        for a in 0..n {
            for b in 0..n {
                prop_assert_eq!(l.leq(Elem(a), Elem(b)), p.leq(a, b));
            }
        }
        for a in l.iter() {
            for b in l.iter() {
                let (m, j) = (l.meet(a, b), l.join(a, b));
                prop_assert_eq!(m, l.meet(b, a));
                prop_assert_eq!(l.meet(a, l.join(a, b)), a);
                prop_assert_eq!(l.join(a, l.meet(a, b)), a);
                for c in l.iter() {
                    prop_assert_eq!(l.leq(c, m), l.leq(c, a) && l.leq(c, b));
                    prop_assert_eq!(l.leq(j, c), l.leq(a, c) && l.leq(b, c));
                }
            }
            // Every element is the join of originals below and the meet of originals above.
            let below = (0..n).map(Elem).filter(|&o| l.leq(o, a));
            let above = (0..n).map(Elem).filter(|&o| l.leq(a, o));
            if a != l.bottom() {
                prop_assert_eq!(l.join_all(below), a);
            }
            if a != l.top() {
                prop_assert_eq!(l.meet_all(above), a);
            }
        }
    }

    #[test]
    fn heyting_adjunction(p in poset(4)) {
        let l = downset_lattice(&p);
        let h = HeytingAlgebra::new(l.clone()).unwrap();
        for a in l.iter() {
            prop_assert_eq!(h.not(a), h.implies(a, l.bottom()));
            for b in l.iter() {
                let imp = h.implies(a, b);
                for x in l.iter() {
                    prop_assert_eq!(l.leq(l.meet(x, a), b), l.leq(x, imp));
                }
            }
        }
    }

    #[test]
    fn formulas_print_and_parse(f in formula()) {
        let text = f.to_string();
        prop_assert_eq!(parse_formula(&text).unwrap(), f);
    }

    #[test]
    fn formulas_respect_the_order(f in formula(), a in 0..4usize, b in 0..4usize, c in 0..4usize) {
        // Valuations on the 4-chain; ⊤ under every valuation iff valid.
        let h = HeytingAlgebra::new(persilat::shapes::chain_lattice(4).unwrap()).unwrap();
        let v = Valuation::new().with("p", Elem(a)).with("q", Elem(b)).with("r", Elem(c));
        let value = eval_formula(&h, &f, &v).unwrap();
        let verdict = persilat::heyting::is_valid(&h, &f, 3).unwrap();
        if verdict.valid {
            prop_assert_eq!(value, h.top());
        }
    }

    #[test]
    fn homology_is_functorial(fc in filtration(), k in 0..2usize) {
        let top = fc.max_level();
        for i in 0..=top {
            for j in i..=top {
                let direct = induced_map(&fc, i, j, k).unwrap();
                for m in i..=j {
                    let composed = induced_map(&fc, m, j, k).unwrap().mul(&induced_map(&fc, i, m, k).unwrap()).unwrap();
                    prop_assert_eq!(&composed, &direct);
                }
            }
        }
    }

    #[test]
    fn persistence_rank_matches_reduction(fc in filtration(), k in 0..2usize) {
        let d = diagram_from_filtration(&fc, k).unwrap();
        for i in 0..=fc.max_level() {
            for j in i..=fc.max_level() {
                let r = persistence_rank(&d, &format!("X{i}"), &format!("X{j}")).unwrap();
                prop_assert_eq!(r, persistent_betti_oracle(&fc, i, j, k).unwrap());
                prop_assert_eq!(r, rank(&induced_map(&fc, i, j, k).unwrap()));
            }
        }
    }

    #[test]
    fn zigzag_completion_commutes(
        p in prime(),
        n in 1..4usize,
        dims in proptest::collection::vec(0..3usize, 7),
        entries in proptest::collection::vec(0..5u32, 64),
    ) {
        let mut spaces = Vec::new();
        for i in 0..=2 * n {
            spaces.push(ZigzagSpace::new(format!("s{i}"), dims[i % dims.len()]));
        }
        let mut maps = Vec::new();
        let mut next = entries.iter().cycle();
        for k in 0..2 * n {
            // Arrows point from vertex spaces (even) into edge spaces (odd).
            let (src, dst) = if k % 2 == 0 { (k, k + 1) } else { (k + 1, k) };
            let (r, c) = (spaces[dst].dim, spaces[src].dim);
            let data: Vec<u32> = (0..r * c).map(|_| next.next().unwrap() % p).collect();
            maps.push(FpMatrix::new(r, c, p, data).unwrap());
        }
        let z = ZigzagModule::new(p, spaces, maps).unwrap();
        let d = zigzag_completion_diagram(&z).unwrap();
        prop_assert!(check_commutativity(&d).is_empty());
        prop_assert_eq!(d.nodes().len(), (n + 1) * (n + 1));
    }
}

#[test]
fn builder_rejects_a_bad_square() {
    let bad = DiagramBuilder::new(2)
        .node("a", 1)
        .node("b", 1)
        .node("c", 1)
        .node("d", 1)
        .edge("ab", "a", "b", vec![vec![1]])
        .edge("ac", "a", "c", vec![vec![1]])
        .edge("bd", "b", "d", vec![vec![1]])
        .edge("cd", "c", "d", vec![vec![0]])
        .build();
    assert!(matches!(bad, Err(persilat::Error::NonCommutative(1))));
}

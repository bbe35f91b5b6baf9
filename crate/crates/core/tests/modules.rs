use abst_core::dedekind::{
    build_cycle_presentation, resolve_infinite_lengths, type_via_formula, BlockSpec, Length, ModuleSpec,
    ResolveOptions, RingModel,
};
use abst_core::pbasis::{compute_structure, GroupType};
use abst_core::snf::type_from_relations;
use abst_core::BigInt;

fn b(n: i64) -> BigInt {
    BigInt::from(n)
}

fn zc3_block() -> ModuleSpec<BigInt> {
    ModuleSpec::block(RingModel::zcp(b(3)).unwrap(), vec![BlockSpec::finite(4, 4)], vec![b(-2)])
}

fn pullback_pair() -> ModuleSpec<BigInt> {
    ModuleSpec::deleted(RingModel::pullback(b(3)).unwrap(), vec![BlockSpec::finite(3, 3); 2])
        .with_connectors(vec![b(-4)])
}

fn direct_and_snf(spec: &ModuleSpec<BigInt>) -> (GroupType, GroupType) {
    let pres = build_cycle_presentation(spec).unwrap().presentation;
    let snf = type_from_relations(pres.relations(), pres.num_generators()).unwrap().for_prime(pres.prime());
    (compute_structure(&pres).unwrap().group_type, snf)
}

#[test]
fn built_examples_have_the_published_types() {
    for (spec, t) in [(zc3_block(), vec![0, 2, 0, 0, 1]), (pullback_pair(), vec![0, 1, 1, 2])] {
        let (direct, snf) = direct_and_snf(&spec);
        assert_eq!(direct.to_vector(), t);
        assert_eq!(snf, direct);
    }
}

#[test]
fn type_formula_on_the_examples() {
    for spec in [zc3_block(), pullback_pair()] {
        let r = type_via_formula(&spec).unwrap();
        assert!(r.agrees(), "{:?} vs {}", r.formula, r.direct);
        assert!(r.sequential_agrees());
    }
}

#[test]
fn single_blocks_match_smith_form() {
    for p in [2, 3, 5] {
        for ring in [RingModel::zcp(b(p)).unwrap(), RingModel::pullback(b(p)).unwrap()] {
            for d1 in 1..=4 {
                for d2 in 1..=4 {
                    let (direct, snf) = direct_and_snf(&ModuleSpec::single(ring.clone(), BlockSpec::finite(d1, d2)));
                    assert_eq!(direct, snf, "p={p} {} ({d1},{d2})", ring.kind());
                }
            }
        }
    }
}

#[test]
fn infinite_lengths_stabilize() {
    let inf = Length::Infinite;
    let zc3 = RingModel::zcp(b(3)).unwrap();
    let cases = [
        (ModuleSpec::single(zc3.clone(), BlockSpec::new(Length::Finite(2), inf)), 2),
        (ModuleSpec::single(zc3.clone(), BlockSpec::new(inf, Length::Finite(2))), 1),
        (ModuleSpec::single(RingModel::pullback(b(2)).unwrap(), BlockSpec::new(Length::Finite(3), inf)), 1),
    ];
    for (spec, free) in cases {
        let r = resolve_infinite_lengths(&spec, ResolveOptions::default()).unwrap();
        assert_eq!(r.group_type.free_rank(), free);
        assert_eq!(r.reclassified.len(), free);
        let later =
            resolve_infinite_lengths(&spec, ResolveOptions { start: r.sentinel.map(|l| l + 5), ..Default::default() })
                .unwrap();
        assert_eq!(later.group_type, r.group_type);
    }
}

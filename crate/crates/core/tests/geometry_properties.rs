use causalnet::geometry::{
    causal_relation, diamond_decomposition, CausalRelation, Dependence, Event, Region, Window,
};
use proptest::prelude::*;

fn small_window() -> Window {
    Window::new(3.0, 3.0, 0.5).unwrap()
}

fn region_from_bits(w: Window, bits: &[bool]) -> Region {
    let g = w.grid();
    let cells = bits
        .iter()
        .enumerate()
        .filter(|(_, b)| **b)
        .map(|(i, _)| (i / g.cols, i % g.cols));
    Region::from_cells(w, cells).unwrap()
}

/// Pairwise definition of the spacelike complement.
fn complement_oracle(r: &Region) -> Vec<(usize, usize)> {
    let g = r.window().grid();
    let cells: Vec<_> = r.cells().iter().collect();
    let mut out = Vec::new();
    for row in 0..g.rows {
        for col in 0..g.cols {
            let spacelike = cells.iter().all(|&(r2, c2)| {
                (col as i64 - c2 as i64).abs() > (row as i64 - r2 as i64).abs()
            });
            if spacelike {
                out.push((row, col));
            }
        }
    }
    out
}

fn sparse_bits(len: usize) -> impl Strategy<Value = Vec<bool>> {
    prop::collection::vec(prop::bool::weighted(0.08), len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn complement_matches_pairwise_oracle(bits in sparse_bits(144)) {
        let r = region_from_bits(small_window(), &bits);
        let got: Vec<_> = r.causal_complement().cells().iter().collect();
        prop_assert_eq!(got, complement_oracle(&r));
    }

    #[test]
    fn galois_closure(bits in sparse_bits(144)) {
        let r = region_from_bits(small_window(), &bits);
        let c1 = r.causal_complement();
        let c2 = c1.causal_complement();
        let c3 = c2.causal_complement();
        prop_assert!(r.is_subset(&c2));
        prop_assert_eq!(c3.cells(), c1.cells());
    }

    #[test]
    fn complement_is_antitone(bits in sparse_bits(144), extra in sparse_bits(144)) {
        let w = small_window();
        let small = region_from_bits(w, &bits);
        let joined: Vec<bool> = bits.iter().zip(&extra).map(|(a, b)| *a || *b).collect();
        let big = region_from_bits(w, &joined);
        prop_assert!(big.causal_complement().is_subset(&small.causal_complement()));
    }

    #[test]
    fn dependence_domain_inside_double_complement(bits in sparse_bits(144)) {
        let r = region_from_bits(small_window(), &bits);
        let d = r.domain_of_dependence();
        prop_assert!(r.is_subset(&d));
        prop_assert!(d.is_subset(&r.double_complement()));
    }

    #[test]
    fn relation_is_symmetric(t1 in -5.0..5.0f64, x1 in -5.0..5.0f64, t2 in -5.0..5.0f64, x2 in -5.0..5.0f64) {
        let (a, b) = (Event::new(t1, x1).unwrap(), Event::new(t2, x2).unwrap());
        prop_assert_eq!(causal_relation(a, b), causal_relation(b, a));
    }

    #[test]
    fn spacelike_singletons_are_independent(r1 in 0usize..12, c1 in 0usize..12, r2 in 0usize..12, c2 in 0usize..12) {
        let w = small_window();
        let (a, b) = (
            Region::from_cells(w, [(r1, c1)]).unwrap(),
            Region::from_cells(w, [(r2, c2)]).unwrap(),
        );
        if (c1 as i64 - c2 as i64).abs() > (r1 as i64 - r2 as i64).abs() {
            prop_assert!(!a.causally_depends_on(&b).unwrap().is_dependent());
        }
    }
}

fn count_where(w: Window, pred: impl Fn(f64, f64) -> bool) -> usize {
    let g = w.grid();
    (0..g.rows)
        .flat_map(|r| (0..g.cols).map(move |c| (r, c)))
        .filter(|&(r, c)| {
            let (t, x) = w.center(r, c);
            pred(t, x)
        })
        .count()
}

#[test]
fn cylinder_diamond_against_exact_shapes() {
    let w = Window::new(8.0, 8.0, 0.05).unwrap();
    let dec = diamond_decomposition(3.0, 2.0, w).unwrap();
    let exact_diamond = count_where(w, |t, x| t.abs() + x.abs() < 5.0);
    let got = dec.diamond.len();
    let rel = (got as f64 - exact_diamond as f64).abs() / exact_diamond as f64;
    assert!(rel <= 0.02, "diamond {got} vs {exact_diamond}");

    let lens = count_where(w, |t, x| x.abs() < 3.0 && t.abs() + x.abs() < 5.0);
    let d = dec.cylinder.domain_of_dependence();
    let rel = (d.len() as f64 - lens as f64).abs() / lens as f64;
    assert!(rel <= 0.02, "lens {} vs {lens}", d.len());
    assert!(d.is_subset(&dec.diamond) && d.len() < dec.diamond.len());
    assert!(dec.tiles());

    // apexes of the caps
    let top = w.cell_of(4.9, 0.0).unwrap();
    let side = w.cell_of(0.0, 4.9).unwrap();
    assert!(dec.caps_t.contains(top.0, top.1));
    assert!(dec.caps_r.contains(side.0, side.1));
    let beyond = w.cell_of(5.1, 0.0).unwrap();
    assert!(!dec.diamond.contains(beyond.0, beyond.1));
}

#[test]
fn cylinder_complement_is_the_wedges() {
    let w = Window::new(8.0, 8.0, 0.1).unwrap();
    let comp = Region::cylinder(w, 3.0, 2.0).unwrap().causal_complement();
    let g = w.grid();
    for (r, c) in (0..g.rows).flat_map(|r| (0..g.cols).map(move |c| (r, c))) {
        let (t, x) = w.center(r, c);
        // cell centres within half a cell of the wedge boundary may go either way
        let margin = x.abs() - t.abs() - 5.0;
        if margin.abs() > w.h {
            assert_eq!(comp.contains(r, c), margin > 0.0, "t={t}, x={x}");
        }
    }
}

#[test]
fn dependence_examples() {
    let w = Window::new(8.0, 8.0, 0.1).unwrap();
    let dec = diamond_decomposition(3.0, 2.0, w).unwrap();
    let top_cap = Region::from_cells(
        w,
        dec.caps_t
            .cells()
            .iter()
            .filter(|&(r, c)| w.center(r, c).0 > 0.0),
    )
    .unwrap();
    assert_eq!(
        top_cap.causally_depends_on(&dec.cylinder).unwrap(),
        Dependence::Dependent
    );
    let inner = Region::cylinder(w, 1.0, 1.0).unwrap();
    assert!(inner.causally_depends_on(&dec.cylinder).unwrap().is_dependent());
    let (r, c) = w.cell_of(0.0, 6.0).unwrap();
    let far = Region::from_cells(w, [(r, c)]).unwrap();
    assert_eq!(
        far.causally_depends_on(&dec.cylinder).unwrap(),
        Dependence::Independent
    );
}

#[test]
fn slabs_determine_everything() {
    let w = Window::new(8.0, 8.0, 0.25).unwrap();
    let slab = Region::time_slice(w, 0.0, 2.0).unwrap();
    assert_eq!(slab.domain_of_dependence().len(), w.grid().len());
    assert!(slab.causal_complement().is_empty());
    assert!(Region::full(w).causal_complement().is_empty());
}

#[test]
fn spacelike_diamonds_complete_to_their_union() {
    let w = Window::new(6.0, 8.0, 0.25).unwrap();
    let a = Region::diamond(w, 0.0, -3.0, 2.0).unwrap();
    let b = Region::diamond(w, 0.0, 3.0, 2.0).unwrap();
    let u = a.union(&b).unwrap();
    assert_eq!(u.double_complement().cells(), u.cells());
    assert_eq!(a.double_complement().cells(), a.cells());
    assert!(a.causal_complement().intersection(&a).unwrap().is_empty());
}

#[test]
fn relation_examples() {
    let e = |t, x| Event::new(t, x).unwrap();
    assert_eq!(causal_relation(e(0.0, 0.0), e(0.0, 3.0)), CausalRelation::Spacelike);
    assert_eq!(causal_relation(e(0.0, 0.0), e(3.0, 0.0)), CausalRelation::Timelike);
    assert_eq!(causal_relation(e(0.0, 0.0), e(2.0, 2.0)), CausalRelation::Lightlike);
}

/// The diamond's area error is a boundary band, so it shrinks with h.
#[test]
fn refinement_shrinks_diamond_error() {
    let mut errs = Vec::new();
    for h in [0.2, 0.1, 0.05] {
        let w = Window::new(6.0, 6.0, h).unwrap();
        let dec = diamond_decomposition(3.0, 2.0, w).unwrap();
        let area = dec.diamond.len() as f64 * h * h;
        let rel = (area - 50.0).abs() / 50.0;
        // a band of width h around a perimeter of 20√2
        assert!(rel <= 20.0 * 2f64.sqrt() * h / 50.0, "h={h}: {rel}");
        errs.push(rel);
    }
    assert!(errs[2] <= errs[0], "{errs:?}");
}

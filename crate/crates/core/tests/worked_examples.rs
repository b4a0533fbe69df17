//! Worked examples. `[PAPER]` values are quoted from the source text;
//! `[DERIVED]` values were computed independently (by hand or by the
//! localization oracle).

use weyl_toric::diagram::{
    build_lambda, intersection_a, intersection_b, intersection_c, YoungDiagram,
};
use weyl_toric::*;

fn sys(s: &str) -> RootSystemId {
    s.parse().unwrap()
}

fn el(system: &str, s: &str) -> WeylElement {
    WeylElement::parse(sys(system), s).unwrap()
}

fn labels(ls: &[SubsetLabel]) -> Vec<String> {
    ls.iter().map(ToString::to_string).collect()
}

fn yd(rows: &[usize]) -> YoungDiagram {
    YoungDiagram::new(rows.to_vec()).unwrap()
}

#[test]
fn type_a_descent_sets() {
    // [PAPER]
    assert_eq!(labels(&el("A4", "12354").descent_labels()), ["1,2,3,5"]);
    assert_eq!(
        labels(&el("A4", "31254").descent_labels()),
        ["3", "1,2,3,5"]
    );
    assert_eq!(labels(&el("A4", "35421").ascent_labels()), ["3"]);
    // [DERIVED] positions with u(i) > u(i+1)
    assert_eq!(el("A4", "35421").descents(), [2, 3, 4]);
}

#[test]
fn type_a_worked_triple() {
    // [PAPER] diagram (4,4,1,1) and value 2
    let lambda = build_lambda(&el("A4", "12354"), &el("A4", "31254"), &el("A4", "35421")).unwrap();
    assert_eq!(lambda.diagram().unwrap().rows(), [4, 4, 1, 1]);
    assert_eq!(lambda.value(Family::A).unwrap(), 2);
    let m = TauMonomial::parse(sys("A4"), "3;1,2,3,5;1,2,3,5;3").unwrap();
    assert_eq!(intersection_number(&m).value, 2);
}

#[test]
fn corner_statistics() {
    // [PAPER] s = 3 with corners at rows 1, 3, 4
    let rows: Vec<usize> = yd(&[4, 2, 2, 1])
        .corner_data()
        .corners
        .iter()
        .map(|c| c.row)
        .collect();
    assert_eq!(rows, [1, 3, 4]);
    // [DERIVED] (a, b, c) by the defining formulas
    let cd = yd(&[4, 4, 1, 1]).corner_data();
    let abc: Vec<_> = cd.corners.iter().map(|c| (c.a, c.b, c.c)).collect();
    assert_eq!(abc, [(1, 2, 1), (1, 0, 0)]);
}

#[test]
fn type_b_and_c_scalings() {
    // [PAPER]
    let u = el("B4", "2,-3,1,4");
    assert_eq!(triple_number(&u, &u, &el("B4", "2,-3,-1,-4")).unwrap(), 4);
    // [DERIVED] A(w) is the chain {2} ⊂ {2,-3}
    assert_eq!(
        labels(class_y(&el("B4", "2,-3,-1,-4")).factors()),
        ["2", "2,-3"]
    );
    assert_eq!(labels(&u.descent_labels()), ["2,-3"]);
    // [DERIVED] oracle on the B3 and C2 fans
    assert_eq!(
        intersection_b(&yd(&[1, 1, 1])),
        4 * intersection_a(&yd(&[1, 1, 1]))
    );
    assert_eq!(intersection_c(&yd(&[2, 2])), -2);
    assert_eq!(intersection_c(&yd(&[1, 1])), -1);
}

#[test]
fn type_d_worked_example() {
    // [PAPER]
    let m = TauMonomial::parse(sys("D5"), "-1;-1;-1,3,4,5,-2;-1,3,4,5,-2;-1,3,4,5,-2").unwrap();
    let r = intersection_number(&m);
    assert_eq!(r.value, -4);
    assert_eq!(
        serde_json::to_value(&r.diagram).unwrap(),
        serde_json::json!({"rows": [5, 5, 5, 1, 1], "labels": "+++"})
    );
    let u = el("D5", "-1,3,4,5,-2");
    assert_eq!(triple_number(&u, &u, &el("D5", "-1,-2,5,4,3")).unwrap(), -4);
}

#[test]
fn type_d_two_even_tops() {
    // [DERIVED] by hand and by the oracle on D4: m = 2, both full rows even,
    // λ = (4,4,1,1), first corner (a, b, c) = (1, 2, 1) so ỹ_1 = C(1, 1) = 1
    let o = Oracle::for_system(sys("D4"), DEFAULT_SIZE_CAP).unwrap();
    let m = TauMonomial::parse(sys("D4"), "1;1;1,2,3,4;1,2,3,4").unwrap();
    let r = intersection_number(&m);
    assert_eq!(r.diagram.to_string(), "(4,4,1,1) [++]");
    assert_eq!(r.value, 1);
    assert_eq!(o.integral(&m).unwrap(), 1);
    // one-signed with a_1 = 0 needs three full rows: λ = (4,4,4,1)
    let m = TauMonomial::parse(sys("D4"), "1;1,2,3,4;1,2,3,4;1,2,3,4").unwrap();
    assert_eq!(intersection_number(&m).value, o.integral(&m).unwrap());
}

#[test]
fn g2_values_and_classes() {
    // [PAPER]
    let g2 = RootSystemId::g2();
    let m = |s| TauMonomial::parse(g2, s).unwrap();
    assert_eq!(intersection_number(&m("3,-2;3")).value, 1);
    assert_eq!(intersection_number(&m("3,-2;3,-2")).value, -1);
    assert_eq!(intersection_number(&m("3;3")).value, -3);
    assert_eq!(class_x(&el("G2", "-1,-2,-3")), m("-3,2;-3"));
    assert_eq!(class_x(&el("G2", "-3,-1,-2")), m("-2,1"));
    assert_eq!(class_y(&el("G2", "1,2,3")), m("3,-2;3"));
    // [DERIVED] the coweight ω_1 = e3 - e2
    assert_eq!(
        WeylElement::identity(g2).coweight_label(1).to_string(),
        "-2,3"
    );
}

#[test]
fn full_flag_is_one() {
    // [PAPER] fixed points are transversal
    for s in ["A4", "B3", "C3", "D4", "D5", "G2"] {
        for u in enumerate_weyl(sys(s)).iter().step_by(5) {
            assert_eq!(intersection_number(&TauMonomial::transversal(u)).value, 1);
        }
    }
}

#[test]
fn hexagon() {
    // [DERIVED] six rays and cones, every τ_S² = -1
    let o = Oracle::for_system(sys("A2"), DEFAULT_SIZE_CAP).unwrap();
    assert_eq!(o.fan().rays().len(), 6);
    assert_eq!(o.fan().cones().len(), 6);
    for ray in o.fan().rays() {
        let m = TauMonomial::new(sys("A2"), vec![ray.label; 2]).unwrap();
        assert_eq!(intersection_number(&m).value, -1);
    }
}

#[test]
fn a5_basis_monomial() {
    // [PAPER]
    assert_eq!(class_x(&el("A5", "216435")).to_string(), "2;1,2,6;1,2,4,6");
}

#[test]
fn non_adjacent_reflections_multiply_freely() {
    // [DERIVED] iterate the simple-reflection product rule
    let ring = BasisRing::new(sys("A5"), DEFAULT_SIZE_CAP).unwrap();
    let (s1, s3, s5) = (el("A5", "213456"), el("A5", "124356"), el("A5", "123465"));
    let product = ring.expand_product(&[s1, s3, s5]).unwrap();
    assert_eq!(product, BasisCombination::basis(el("A5", "214365")));
    let id = WeylElement::identity(sys("A5"));
    assert_eq!(
        ring.expand_product(&[]).unwrap(),
        BasisCombination::basis(id.clone())
    );
    assert_eq!(
        ring.expand_product(&[el("A5", "132456")]).unwrap(),
        BasisCombination::basis(el("A5", "132456"))
    );
    // adjacent reflections multiply to zero
    assert!(ring
        .expand_product(&[el("A5", "213456"), el("A5", "132456")])
        .unwrap()
        .is_zero());
}

#[test]
fn g2_pairing_blocks() {
    // [DERIVED] degrees 0, 1, 2 have 1, 10, 1 elements
    let ring = BasisRing::new(RootSystemId::g2(), DEFAULT_SIZE_CAP).unwrap();
    let mut sizes = [0; 3];
    for i in 0..12 {
        sizes[ring.degree(i)] += 1;
        assert_eq!(ring.pairing().entry(i, i), 1);
    }
    assert_eq!(sizes, [1, 10, 1]);
}

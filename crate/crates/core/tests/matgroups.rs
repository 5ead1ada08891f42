use noncomm_core::arith::gcd;
use noncomm_core::matgroups::{
    field_of_order, maximal_abelian_partition, pgl2_partition, psl2_partition, standard_transvections, Mat2,
};
use noncomm_core::{gl2, pgl2, psl2, sl2, MatrixError};

const QS: [u64; 7] = [2, 3, 4, 5, 7, 8, 9];

#[test]
fn orders_by_enumeration() {
    for q in QS {
        assert_eq!(sl2(q).unwrap().order() as u64, q * (q * q - 1), "SL(2,{q})");
        assert_eq!(gl2(q).unwrap().order() as u64, (q * q - 1) * (q * q - q), "GL(2,{q})");
    }
    assert_eq!(sl2(2).unwrap().order(), 6);
    assert_eq!(psl2(9).unwrap().order(), 360);
    assert_eq!(pgl2(5).unwrap().order(), 120);
}

#[test]
fn centers_are_scalars() {
    for q in QS {
        let field = field_of_order(q).unwrap();
        let g = gl2(q).unwrap();
        let scalars: Vec<usize> = (0..g.order())
            .filter(|&x| {
                let m = Mat2::from_key(&field, g.key(x));
                m.b.is_zero() && m.c.is_zero() && m.a == m.d
            })
            .collect();
        assert_eq!(g.center().members(), scalars.as_slice(), "GL(2,{q})");
        assert_eq!(g.center().order() as u64, q - 1);
        assert_eq!(sl2(q).unwrap().center().order() as u64, gcd(2, q - 1));
    }
    assert_eq!(gl2(4).unwrap().center().order(), 3);
}

#[test]
fn small_q_coincidences() {
    let s3 = noncomm_core::build_str("S3").unwrap();
    for g in [sl2(2).unwrap(), pgl2(2).unwrap(), psl2(2).unwrap()] {
        assert!(g.is_isomorphic(&s3).unwrap().is_some());
    }
    let sl24 = sl2(4).unwrap();
    assert!(sl24.is_isomorphic(&psl2(4).unwrap()).unwrap().is_some());
    assert!(sl24.is_isomorphic(&pgl2(4).unwrap()).unwrap().is_some());
}

#[test]
fn derived_subgroup_of_gl_is_sl() {
    for q in [4, 5, 7] {
        let g = gl2(q).unwrap();
        let d = g.subgroup_as_group(&g.derived_subgroup(), "G'").unwrap();
        assert!(d.is_isomorphic(&sl2(q).unwrap()).unwrap().is_some(), "q = {q}");
    }
}

#[test]
fn transvections_generate_sl() {
    for q in [2u32, 3, 4, 5, 8, 9] {
        let g = gl2(q as u64).unwrap();
        let gens: Vec<usize> = (1..q)
            .flat_map(|t| [g.index_of(&[1, t, 0, 1]).unwrap(), g.index_of(&[1, 0, t, 1]).unwrap()])
            .collect();
        let s = g.subgroup_as_group(&g.closure(&gens), "T").unwrap();
        assert_eq!(s.order(), sl2(q as u64).unwrap().order(), "q = {q}");
        if q <= 5 {
            assert!(s.is_isomorphic(&sl2(q as u64).unwrap()).unwrap().is_some(), "q = {q}");
        }
    }
    // over a prime field the two elementary transvections already suffice
    for q in [2, 3, 5, 7] {
        let g = gl2(q).unwrap();
        let (a, b) = standard_transvections(&g).unwrap();
        assert_eq!(g.closure(&[a, b]).order() as u64, q * (q * q - 1));
    }
}

#[test]
fn partitions() {
    for q in [4u64, 5, 7] {
        for report in [psl2_partition(q).unwrap(), pgl2_partition(q).unwrap()] {
            assert_eq!(report.sylow_count, Some(q as usize + 1));
            assert_eq!(report.split_tori_count, Some((q * (q + 1) / 2) as usize));
            assert_eq!(report.nonsplit_tori_count, Some((q * (q - 1) / 2) as usize));
            assert_eq!(report.components as u64, q * q + q + 1);
            assert!(report.covers);
        }
    }
    let psl5 = psl2_partition(5).unwrap();
    let orders: Vec<(usize, usize)> = psl5.component_orders.iter().map(|c| (c.quotient_order, c.count)).collect();
    assert_eq!(orders, vec![(2, 15), (3, 10), (5, 6)]);
    let pgl5 = pgl2_partition(5).unwrap();
    let orders: Vec<(usize, usize)> = pgl5.component_orders.iter().map(|c| (c.quotient_order, c.count)).collect();
    assert_eq!(orders, vec![(4, 15), (5, 6), (6, 10)]);
    let s3 = maximal_abelian_partition(&sl2(2).unwrap()).unwrap();
    let orders: Vec<(usize, usize)> = s3.component_orders.iter().map(|c| (c.subgroup_order, c.count)).collect();
    assert_eq!(orders, vec![(2, 3), (3, 1)]);
    assert_eq!(s3.split_tori_count, Some(0));
}

#[test]
fn non_ac_input_is_rejected() {
    assert!(matches!(maximal_abelian_partition(&psl2(7).unwrap()), Err(MatrixError::NotAc { .. })));
}

#[test]
fn out_of_range() {
    assert!(matches!(gl2(6), Err(MatrixError::NotPrimePower(6))));
    assert!(sl2(1).is_err());
}

//! Frozen outputs of the brute-force stage oracle.

mod oracle;

use num_bigint::BigInt;

fn big(s: &str) -> BigInt {
    s.parse().unwrap()
}

#[test]
fn stage_one_window_scan() {
    let st = oracle::first_stage(1, 2);
    let hits = oracle::scan(&st, &BigInt::from(3), 1, 200);
    let expected: Vec<u64> = (51..=96).step_by(3).collect();
    assert_eq!(hits, expected);
}

#[test]
fn half_over_two_three_table() {
    let (stages, edges) = oracle::table(1, 2, &[3, 2]);
    for s in &stages {
        println!("{s:?}");
    }
    for e in &edges {
        println!("{e:?}");
    }
    assert_eq!(edges[0].n, big("51"));
    assert_eq!(edges[0].mult, big("99"));
    assert_eq!(stages[1].dim_g, big("33"));
    assert_eq!(stages[1].m_factors, big("102"));
    assert_eq!(&stages[1].m_factors - &stages[1].dim_g, big("69"));
    assert_eq!(stages[1].dim_p, big("198"));
    assert_eq!(stages[1].unit, big("6"));
    assert_eq!(stages[1].l, big("3"));
    assert_eq!(stages[1].k, big("3"));
    assert_eq!((stages[1].l0.clone(), stages[1].l1.clone()), (big("1"), big("2")));
    assert_eq!(edges[0].r, big("198"));
    assert_eq!(edges[0].s, big("99"));
    assert_eq!(stages[1].q, big("5400"));
    assert_eq!(edges[1].n, big("105850802"));
    assert_eq!(edges[1].mult, big("109058402"));
    assert_eq!(stages[2].dim_g, big("33") * big("54529201"));
    assert_eq!(stages[2].l, big("6"));
    assert_eq!(stages[2].unit, big("12"));
    for s in &stages {
        assert_eq!(oracle::least_positive_multiple(&s.m_factors, &(&s.m_factors - &s.dim_g)), &s.l + 1);
    }
}

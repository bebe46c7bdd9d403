//! Table 1 written out row by row as generators, compared with the
//! enumerator on every system of the (k, l) ≤ 3 grid.

use std::collections::BTreeSet;

use taffine::{Dims, Family, RootSystem, RootVec};

type Row = (Vec<RootVec>, i64, i64);

fn pm(v: RootVec) -> [RootVec; 2] {
    let n = v.neg();
    [v, n]
}

fn e(d: Dims, i: usize) -> RootVec {
    RootVec::eps(d, i)
}

fn f(d: Dims, j: usize) -> RootVec {
    RootVec::del(d, j)
}

fn singles(d: Dims) -> Vec<RootVec> {
    let mut v = Vec::new();
    (1..=d.k).for_each(|i| v.extend(pm(e(d, i))));
    (1..=d.l).for_each(|j| v.extend(pm(f(d, j))));
    v
}

fn pairs(d: Dims) -> Vec<RootVec> {
    let mut v = Vec::new();
    let both = |v: &mut Vec<RootVec>, a: RootVec, b: RootVec| {
        v.extend(pm(a.add(&b)));
        v.extend(pm(a.sub(&b)));
    };
    for i in 1..=d.k {
        for r in i + 1..=d.k {
            both(&mut v, e(d, i), e(d, r));
        }
        for j in 1..=d.l {
            both(&mut v, e(d, i), f(d, j));
        }
    }
    for j in 1..=d.l {
        for s in j + 1..=d.l {
            both(&mut v, f(d, j), f(d, s));
        }
    }
    v
}

fn doubles_e(d: Dims) -> Vec<RootVec> {
    (1..=d.k).flat_map(|i| pm(e(d, i).scale(2))).collect()
}

fn doubles_f(d: Dims) -> Vec<RootVec> {
    (1..=d.l).flat_map(|j| pm(f(d, j).scale(2))).collect()
}

fn rows(fam: Family, d: Dims) -> Vec<Row> {
    match fam {
        Family::A2Mix => vec![
            (singles(d), 1, 0),
            (pairs(d), 1, 0),
            (doubles_e(d), 2, 1),
            (doubles_f(d), 2, 0),
        ],
        Family::A2Odd => vec![(pairs(d), 1, 0), (doubles_e(d), 2, 1), (doubles_f(d), 2, 0)],
        Family::A4 => vec![
            (singles(d), 1, 0),
            (pairs(d), 2, 0),
            (doubles_e(d), 4, 2),
            (doubles_f(d), 4, 0),
        ],
        Family::D2 => vec![(singles(d), 1, 0), (pairs(d), 2, 0), (doubles_f(d), 2, 0)],
    }
}

fn expected(fam: Family, d: Dims, n: i64) -> BTreeSet<RootVec> {
    let mut out: BTreeSet<RootVec> = (-n..=n).map(|m| RootVec::delta(d).scale(m)).collect();
    for (dots, r, k) in rows(fam, d) {
        for dot in dots {
            for m in (-n..=n).filter(|m| m.rem_euclid(r) == k) {
                out.insert(dot.with_dlt(m));
            }
        }
    }
    out
}

#[test]
fn enumeration_matches_rows() {
    let mut systems = 0;
    for fam in Family::ALL {
        for k in 1..=3 {
            for l in 1..=3 {
                let Ok(sys) = RootSystem::from_parts(fam, k, l) else {
                    assert_eq!((fam, k, l), (Family::A2Odd, 1, 1));
                    continue;
                };
                systems += 1;
                let got: BTreeSet<RootVec> = sys.enumerate_window(5).into_iter().collect();
                assert_eq!(got, expected(fam, sys.dims(), 5), "{fam} ({k},{l})");
            }
        }
    }
    assert_eq!(systems, 35);
}

#[test]
fn quoted_membership_rows() {
    let sys = RootSystem::from_parts(Family::A2Mix, 2, 1).unwrap();
    let d = sys.dims();
    let v = |s: &str| RootVec::parse(s, d).unwrap();
    assert!(sys.contains(&v("2e1 + 3d")));
    assert!(!sys.contains(&v("2e1 + 2d")));
    assert!(sys.contains(&v("e1 + f1 + 7d")));
    assert_eq!(sys.enumerate_window(0).len(), expected(Family::A2Mix, d, 0).len());
}

#[test]
fn window_zero_count_a2mix_11() {
    let sys = RootSystem::from_parts(Family::A2Mix, 1, 1).unwrap();
    assert_eq!(sys.enumerate_window(0).len(), 11);
}

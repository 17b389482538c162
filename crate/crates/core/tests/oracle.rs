//! The enumerator against a direct subset search written independently here.

use num_bigint::BigUint;
use num_rational::BigRational;
use riders_core::enumerate::{census_types, count_nonattacking, Budget};
use riders_core::{interior_lattice_points, BoardPolygon, Inequality, MoveSet, Point};

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

/// Cells strictly inside `t·B`, scanning a generous box with exact rationals.
fn naive_cells(board: &BoardPolygon, t: i64) -> Vec<Point> {
    let mut out = Vec::new();
    for x in -4 * t - 4..=4 * t + 4 {
        for y in -4 * t - 4..=4 * t + 4 {
            let inside = board
                .inequalities()
                .iter()
                .all(|h| rat(h.a * x + h.b * y, 1) < &h.beta * rat(t, 1));
            if inside {
                out.push(Point::new(x, y));
            }
        }
    }
    out
}

fn collinear(p: Point, q: Point, c: i64, d: i64) -> bool {
    // cross product of p - q with (c, d)
    (p.x - q.x) * d == (p.y - q.y) * c
}

fn naive_count(moves: &[(i64, i64)], cells: &[Point], q: usize) -> u64 {
    fn rec(moves: &[(i64, i64)], cells: &[Point], q: usize, start: usize, chosen: &mut Vec<Point>) -> u64 {
        if chosen.len() == q {
            return 1;
        }
        let mut total = 0;
        for k in start..cells.len() {
            let p = cells[k];
            if chosen.iter().all(|&z| moves.iter().all(|&(c, d)| !collinear(p, z, c, d))) {
                chosen.push(p);
                total += rec(moves, cells, q, k + 1, chosen);
                chosen.pop();
            }
        }
        total
    }
    rec(moves, cells, q, 0, &mut Vec::new())
}

fn pieces() -> Vec<(MoveSet, Vec<(i64, i64)>)> {
    vec![
        (MoveSet::queen(), vec![(1, 0), (0, 1), (1, 1), (1, -1)]),
        (MoveSet::rook(), vec![(1, 0), (0, 1)]),
        (MoveSet::bishop(), vec![(1, 1), (1, -1)]),
        (MoveSet::nightrider(), vec![(1, 2), (2, 1), (1, -2), (2, -1)]),
        (MoveSet::semiqueen(), vec![(1, 0), (0, 1), (1, 1)]),
    ]
}

fn boards() -> Vec<BoardPolygon> {
    vec![
        BoardPolygon::square(),
        BoardPolygon::rectangle(rat(3, 2), rat(1, 1)).unwrap(),
        // triangle x >= 0, y >= 0, x + y <= 1
        BoardPolygon::from_inequalities(vec![
            Inequality::new(-1, 0, rat(0, 1)),
            Inequality::new(0, -1, rat(0, 1)),
            Inequality::new(1, 1, rat(1, 1)),
        ])
        .unwrap(),
        // a rational quadrilateral
        BoardPolygon::from_inequalities(vec![
            Inequality::new(-1, 0, rat(0, 1)),
            Inequality::new(0, -1, rat(-1, 3)),
            Inequality::new(1, 2, rat(5, 2)),
            Inequality::new(2, -1, rat(3, 2)),
        ])
        .unwrap(),
    ]
}

#[test]
fn interior_points_match_naive_scan() {
    for b in boards() {
        for t in 0..9 {
            let mut fast = interior_lattice_points(&b, t);
            fast.sort();
            assert_eq!(fast, naive_cells(&b, t as i64), "board {} t={t}", b.to_text());
        }
    }
}

#[test]
fn counts_match_subset_search() {
    for b in boards() {
        for (ms, raw) in pieces() {
            for q in 1..=3u64 {
                for n in 1..=7u64 {
                    let cells = naive_cells(&b, n as i64 + 1);
                    let want = naive_count(&raw, &cells, q as usize);
                    let got = count_nonattacking(&ms, &b, q, n, Budget::DEFAULT).unwrap();
                    assert_eq!(got.unlabelled, BigUint::from(want), "{} {} q={q} n={n}", ms.label(), b.to_text());
                }
            }
        }
    }
}

#[test]
fn four_pieces_match_subset_search() {
    let sq = BoardPolygon::square();
    for (ms, raw) in pieces() {
        for n in 1..=6u64 {
            let want = naive_count(&raw, &naive_cells(&sq, n as i64 + 1), 4);
            let got = count_nonattacking(&ms, &sq, 4, n, Budget::DEFAULT).unwrap();
            assert_eq!(got.unlabelled, BigUint::from(want), "{} n={n}", ms.label());
        }
    }
}

#[test]
fn census_counts_every_configuration() {
    let sq = BoardPolygon::square();
    for (ms, raw) in pieces() {
        let c = census_types(&ms, &sq, 3, 5, Budget::DEFAULT).unwrap();
        let want = naive_count(&raw, &naive_cells(&sq, 6), 3);
        assert_eq!(c.configurations, BigUint::from(want));
        assert_eq!(c.labelled, c.unlabelled * 6u32);
    }
}

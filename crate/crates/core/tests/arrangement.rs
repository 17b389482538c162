use num_bigint::{BigInt, BigUint};
use riders_core::arrangement::{build_move_arrangement, intersection_semilattice, reconstruct_count, Semilattice, DEFAULT_MAX_FLATS};
use riders_core::enumerate::{count_nonattacking, Budget};
use riders_core::{BoardPolygon, MoveSet};

fn semilattice(ms: &MoveSet, q: usize) -> Semilattice {
    intersection_semilattice(&build_move_arrangement(ms, q), ms, q, DEFAULT_MAX_FLATS).unwrap()
}

fn all_pieces() -> Vec<MoveSet> {
    vec![MoveSet::queen(), MoveSet::rook(), MoveSet::bishop(), MoveSet::nightrider(), MoveSet::semiqueen()]
}

#[test]
fn reconstruction_equals_labelled_brute_force() {
    let sq = BoardPolygon::square();
    for ms in all_pieces() {
        for q in 2..=3 {
            let sl = semilattice(&ms, q);
            for n in 1..=6 {
                let rec = reconstruct_count(&sl, &sq, n, Budget::DEFAULT).unwrap();
                let bf = count_nonattacking(&ms, &sq, q as u64, n, Budget::DEFAULT).unwrap();
                assert_eq!(rec, BigInt::from(bf.labelled), "{} q={q} n={n}", ms.label());
            }
        }
    }
}

#[test]
fn reconstruction_on_rational_board() {
    let b = BoardPolygon::rectangle(num_rational::BigRational::new(5.into(), 2.into()), num_rational::BigRational::new(4.into(), 3.into())).unwrap();
    let ms = MoveSet::queen();
    let sl = semilattice(&ms, 3);
    for n in 1..=5 {
        let rec = reconstruct_count(&sl, &b, n, Budget::DEFAULT).unwrap();
        let bf = count_nonattacking(&ms, &b, 3, n, Budget::DEFAULT).unwrap();
        assert_eq!(rec, BigInt::from(bf.labelled));
    }
}

#[test]
fn mobius_recursion_and_flat_bounds() {
    for ms in all_pieces() {
        let sl = semilattice(&ms, 3);
        let flats = sl.flats();
        for (u, fu) in flats.iter().enumerate().skip(1) {
            let below: i64 = flats[..=u]
                .iter()
                .filter(|fv| fv.hyperplanes & !fu.hyperplanes == 0)
                .map(|fv| fv.mobius)
                .sum();
            assert_eq!(below, 0);
            let k = fu.kappa();
            assert!(k.div_ceil(2) <= fu.codim && fu.codim <= 2 * k - 2);
        }
        assert!(sl.class_sizes_hold());
    }
}

#[test]
fn named_mobius_values() {
    for ms in all_pieces() {
        let m = ms.len() as i64;
        let sl = semilattice(&ms, 3);
        for r in 0..ms.len() {
            assert_eq!(sl.mobius(sl.collinear(&[0, 1], r).unwrap()).unwrap(), -1);
            assert_eq!(sl.mobius(sl.collinear(&[0, 1, 2], r).unwrap()).unwrap(), 2);
            let w = sl.meet(sl.coincident(&[0, 2]).unwrap(), sl.collinear(&[0, 1, 2], r).unwrap()).unwrap();
            assert_eq!(sl.mobius(w).unwrap(), -2 * (m - 1));
        }
        assert_eq!(sl.mobius(sl.coincident(&[1, 2]).unwrap()).unwrap(), m - 1);
        assert_eq!(sl.mobius(sl.coincident(&[0, 1, 2]).unwrap()).unwrap(), (m - 1) * (m - 1) * (m + 2));
    }
}

#[test]
fn example_flats_similarity() {
    // X: z1 = z2 and z1, z3 on a slope-1 line; Y: same with 2 and 3 swapped; Z: all on
    // one slope -1 line with z1 = z3.
    let sl = semilattice(&MoveSet::queen(), 3);
    let slope1 = 2;
    let slope_m1 = 3;
    let x = sl.meet(sl.coincident(&[0, 1]).unwrap(), sl.collinear(&[0, 1, 2], slope1).unwrap()).unwrap();
    let y = sl.meet(sl.coincident(&[0, 2]).unwrap(), sl.collinear(&[0, 1, 2], slope1).unwrap()).unwrap();
    let z = sl.meet(sl.coincident(&[0, 2]).unwrap(), sl.collinear(&[0, 1, 2], slope_m1).unwrap()).unwrap();
    let f = sl.flats();
    assert_eq!((f[x].kappa(), f[x].codim), (3, 3));
    assert_eq!(f[x].iso_class, f[y].iso_class);
    assert_ne!(f[x].iso_class, f[z].iso_class);
}

#[test]
fn four_queens_products() {
    let ms = MoveSet::queen();
    let sl = semilattice(&ms, 4);
    assert!(sl.class_sizes_hold());
    let sq = BoardPolygon::square();
    let mut checked = 0;
    for id in 0..sl.len() {
        let parts = sl.decompose(id).unwrap();
        if parts.len() < 2 {
            continue;
        }
        checked += 1;
        let mu: i64 = parts.iter().map(|&p| sl.mobius(p).unwrap()).product();
        assert_eq!(mu, sl.mobius(id).unwrap());
        if checked % 25 == 0 {
            let prod: BigUint = parts.iter().map(|&p| sl.alpha(p, &sq, 4, Budget::DEFAULT).unwrap()).product();
            assert_eq!(prod, sl.alpha(id, &sq, 4, Budget::DEFAULT).unwrap());
        }
    }
    assert!(checked > 0);
    let rec = reconstruct_count(&sl, &sq, 4, Budget::DEFAULT).unwrap();
    assert_eq!(rec, BigInt::from(count_nonattacking(&ms, &sq, 4, 4, Budget::DEFAULT).unwrap().labelled));
}

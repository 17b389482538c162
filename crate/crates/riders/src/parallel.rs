//! Rayon drivers. Work units are the enumerator's first-cell splits; partial sums
//! are integers, so results do not depend on scheduling.

use rayon::prelude::*;
use riders_core::enumerate::{Budget, Count, CountTable, Kernel, Method};
use riders_core::{BoardPolygon, MoveSet};

use crate::Error;

pub fn count(ms: &MoveSet, board: &BoardPolygon, q: u64, n: u64, budget: Budget) -> Result<Count, riders_core::Error> {
    let kernel = Kernel::new(ms, board, n + 1);
    budget.check("count_nonattacking", kernel.len(), q)?;
    let total: u128 = (0..kernel.units(q)).into_par_iter().map(|u| kernel.partial(q, u)).sum();
    Ok(Count::from_unlabelled(q, kernel.finish(q, total)))
}

pub fn count_series(
    ms: &MoveSet,
    board: &BoardPolygon,
    q: u64,
    range: (u64, u64),
    budget: Budget,
) -> Result<CountTable, riders_core::Error> {
    let (from, to) = range;
    if from > to {
        return Err(riders_core::Error::InvalidArgument(format!("empty range {from}..={to}")));
    }
    let mut table = CountTable::new(ms, board, q, Method::BruteForce);
    for n in from..=to {
        let c = count(ms, board, q, n, budget)
            .map_err(|e| riders_core::Error::CapacityAt { n, source: Box::new(e) })?;
        table.insert(n, c);
    }
    Ok(table)
}

/// Runs `f` on a pool of `threads` workers, or on the global pool when `None`.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, Error> {
    match threads {
        None => Ok(f()),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| Error::Usage(format!("cannot start {t} threads: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use riders_core::enumerate::count_nonattacking;

    #[test]
    fn matches_serial() {
        let sq = BoardPolygon::square();
        for q in 1..=4 {
            for n in [3, 7] {
                let a = count(&MoveSet::queen(), &sq, q, n, Budget::DEFAULT).unwrap();
                let b = count_nonattacking(&MoveSet::queen(), &sq, q, n, Budget::DEFAULT).unwrap();
                assert_eq!(a, b);
            }
        }
        let t2 = with_threads(Some(2), || count_series(&MoveSet::bishop(), &sq, 3, (1, 6), Budget::DEFAULT)).unwrap().unwrap();
        let t1 = with_threads(Some(1), || count_series(&MoveSet::bishop(), &sq, 3, (1, 6), Budget::DEFAULT)).unwrap().unwrap();
        assert_eq!(t1, t2);
    }
}

use rayon::prelude::*;

/// Maps `f` over `items` on a pool of `jobs` threads and concatenates the
/// results in input order. `jobs <= 1` runs on the calling thread.
pub fn map_concat<I, T, F>(jobs: usize, items: &[I], f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> Vec<T> + Sync + Send,
{
    if jobs <= 1 {
        return items.iter().flat_map(f).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("failed to start worker threads");
    pool.install(|| items.par_iter().flat_map_iter(f).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_independent_of_jobs() {
        let items: Vec<u32> = (0..100).collect();
        let f = |x: &u32| vec![*x, x * 2];
        assert_eq!(map_concat(1, &items, f), map_concat(4, &items, f));
    }
}

//! Thin façade over rayon so every data-parallel loop has a sequential
//! fallback when the `parallel` feature is disabled. Reductions are exact and
//! associative, so results do not depend on the split.

/// Map `items` and fold the results with an associative `reduce`.
#[cfg(feature = "parallel")]
pub fn map_reduce<T, U, M, R, I>(items: I, identity: impl Fn() -> U + Sync + Send, map: M, reduce: R) -> U
where
    I: IntoIterator<Item = T>,
    T: Send,
    U: Send,
    M: Fn(T) -> U + Sync + Send,
    R: Fn(U, U) -> U + Sync + Send,
{
    use rayon::prelude::*;
    let items: Vec<T> = items.into_iter().collect();
    items
        .into_par_iter()
        .map(map)
        .reduce(&identity, &reduce)
}

#[cfg(not(feature = "parallel"))]
pub fn map_reduce<T, U, M, R, I>(items: I, identity: impl Fn() -> U, map: M, reduce: R) -> U
where
    I: IntoIterator<Item = T>,
    M: Fn(T) -> U,
    R: Fn(U, U) -> U,
{
    items.into_iter().map(map).fold(identity(), reduce)
}

/// Map `items` to vectors of records and concatenate deterministically
/// (output order matches input order regardless of scheduling).
#[cfg(feature = "parallel")]
pub fn map_collect<T, U, M, I>(items: I, map: M) -> Vec<U>
where
    I: IntoIterator<Item = T>,
    T: Send,
    U: Send,
    M: Fn(T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    let items: Vec<T> = items.into_iter().collect();
    items.into_par_iter().map(map).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_collect<T, U, M, I>(items: I, map: M) -> Vec<U>
where
    I: IntoIterator<Item = T>,
    M: Fn(T) -> U,
{
    items.into_iter().map(map).collect()
}

use num_bigint::BigUint;
use serde::Serialize;

use super::{IntervalError, IntervalParams};
use crate::decomposition::Decomposition;
use crate::system::SequenceCache;

/// The three index blocks of a decomposition, as dense ascending coefficient
/// vectors: `c1` covers `1..=alpha`, `c2` covers `alpha+1..=alpha+q`, `c3`
/// covers `alpha+q+1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockSplit {
    pub params: IntervalParams,
    pub c1: Vec<u32>,
    pub c2: Vec<u32>,
    pub c3: Vec<u32>,
    pub s1: u64,
    pub s2: u64,
    pub s3: u64,
}

pub fn block_split(decomp: &Decomposition, params: IntervalParams) -> Result<BlockSplit, IntervalError> {
    let IntervalParams { n, alpha, q } = params;
    if let Some(top) = decomp.top_index() {
        if top > n {
            return Err(IntervalError::IndexOutOfRange { top, n });
        }
    }
    let c1 = decomp.dense(1, alpha);
    let c2 = decomp.dense(alpha + 1, alpha + q);
    let c3 = decomp.dense(alpha + q + 1, n);
    let sum = |v: &[u32]| v.iter().map(|&a| u64::from(a)).sum();
    Ok(BlockSplit { params, s1: sum(&c1), s2: sum(&c2), s3: sum(&c3), c1, c2, c3 })
}

/// Whether `C2` contains `run_length` consecutive zero coefficients.
///
/// A run longer than the window is an error rather than `false`, so a
/// mis-sized experiment cannot pass silently.
pub fn has_zero_run(split: &BlockSplit, run_length: usize) -> Result<bool, IntervalError> {
    assert!(run_length >= 1, "run length must be positive");
    if run_length > split.c2.len() {
        return Err(IntervalError::RunExceedsWindow { run: run_length, q: split.c2.len() });
    }
    let mut run = 0;
    for &a in &split.c2 {
        run = if a == 0 { run + 1 } else { 0 };
        if run >= run_length {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `m_0`: the part of the decomposition with index at most `alpha - 1`.
pub fn truncate_m0(decomp: &Decomposition, alpha: usize, cache: &SequenceCache) -> BigUint {
    if alpha <= 1 {
        return BigUint::default();
    }
    decomp.slice(1, alpha - 1).iter().map(|&(j, a)| cache.at(j) * a).sum()
}

/// The map `t(m + h) = m_0 + h` if that is below `G_alpha`, else
/// `m_0 + h - G_alpha`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncationMap {
    m0: BigUint,
    g_alpha: BigUint,
}

impl TruncationMap {
    pub fn new(m_decomp: &Decomposition, alpha: usize, cache: &SequenceCache) -> Self {
        Self::from_m0(truncate_m0(m_decomp, alpha, cache), cache.at(alpha).clone())
    }

    pub fn from_m0(m0: BigUint, g_alpha: BigUint) -> Self {
        TruncationMap { m0, g_alpha }
    }

    pub fn m0(&self) -> &BigUint {
        &self.m0
    }

    pub fn g_alpha(&self) -> &BigUint {
        &self.g_alpha
    }

    /// `t(m + h)` for `0 <= h < G_alpha`.
    pub fn apply(&self, h: &BigUint) -> Result<BigUint, IntervalError> {
        if *h >= self.g_alpha {
            return Err(IntervalError::HOutOfRange);
        }
        let v = &self.m0 + h;
        Ok(if v < self.g_alpha { v } else { v - &self.g_alpha })
    }

    /// `u64` variant used by exhaustive walks.
    pub(crate) fn apply_u64(&self, h: u64) -> Option<u64> {
        use num_traits::ToPrimitive;
        let g = self.g_alpha.to_u64()?;
        let m0 = self.m0.to_u64()?;
        if h >= g {
            return None;
        }
        let v = m0 + h;
        Some(if v < g { v } else { v - g })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::Plrs;

    fn fib() -> SequenceCache {
        let mut c = SequenceCache::new(Plrs::fibonacci());
        c.ensure(40);
        c
    }

    #[test]
    fn split_membership() {
        let mut cache = fib();
        let d = Decomposition::from_entries(vec![(3, 1), (15, 1), (30, 1)], &mut cache).unwrap();
        let params = IntervalParams::new(30, 14, 4).unwrap();
        let split = block_split(&d, params).unwrap();
        assert_eq!((split.s1, split.s2, split.s3), (1, 1, 1));
        assert_eq!(split.c1.len(), 14);
        assert_eq!(split.c1[2], 1);
        assert_eq!(split.c2, vec![1, 0, 0, 0]);
        assert_eq!(split.c3.len(), 12);
        assert_eq!(split.c3[11], 1);
    }

    #[test]
    fn split_of_empty() {
        let split = block_split(&Decomposition::empty(), IntervalParams::new(30, 14, 4).unwrap()).unwrap();
        assert_eq!((split.s1, split.s2, split.s3), (0, 0, 0));
    }

    #[test]
    fn split_rejects_large_top() {
        let mut cache = fib();
        let d = Decomposition::from_entries(vec![(31, 1)], &mut cache).unwrap();
        assert_eq!(
            block_split(&d, IntervalParams::new(30, 14, 4).unwrap()),
            Err(IntervalError::IndexOutOfRange { top: 31, n: 30 })
        );
    }

    fn split_with_c2(c2: Vec<u32>) -> BlockSplit {
        let q = c2.len();
        BlockSplit {
            params: IntervalParams::new(q + 10, 5, q).unwrap(),
            c1: vec![],
            c2,
            c3: vec![],
            s1: 0,
            s2: 0,
            s3: 0,
        }
    }

    #[test]
    fn zero_runs() {
        assert_eq!(has_zero_run(&split_with_c2(vec![0, 0, 0, 0, 0, 0, 1, 0]), 6), Ok(true));
        assert_eq!(has_zero_run(&split_with_c2(vec![1, 0, 0, 1, 0, 0]), 3), Ok(false));
        assert_eq!(
            has_zero_run(&split_with_c2(vec![0, 0, 0, 0]), 6),
            Err(IntervalError::RunExceedsWindow { run: 6, q: 4 })
        );
        assert_eq!(has_zero_run(&split_with_c2(vec![1, 0, 1, 0]), 4), Ok(false));
    }

    #[test]
    fn m0_truncation() {
        let mut cache = fib();
        let d = Decomposition::from_entries(vec![(3, 1), (15, 1), (30, 1)], &mut cache).unwrap();
        assert_eq!(truncate_m0(&d, 14, &cache), BigUint::from(3u32));
        let d = Decomposition::from_entries(vec![(20, 1)], &mut cache).unwrap();
        assert_eq!(truncate_m0(&d, 14, &cache), BigUint::default());
        let d = Decomposition::from_entries(vec![(2, 1), (5, 1)], &mut cache).unwrap();
        assert_eq!(truncate_m0(&d, 6, &cache), *d.value());
    }

    #[test]
    fn t_map_cases() {
        let cache = fib();
        assert_eq!(cache.at(14), &BigUint::from(610u32));
        let zero = TruncationMap::from_m0(BigUint::default(), cache.at(15).clone());
        assert_eq!(zero.apply(&BigUint::from(500u32)).unwrap(), BigUint::from(500u32));

        let t = TruncationMap::from_m0(BigUint::from(3u32), cache.at(15).clone());
        assert_eq!(cache.at(15), &BigUint::from(987u32));
        assert_eq!(t.apply(&BigUint::from(983u32)).unwrap(), BigUint::from(986u32));
        assert_eq!(t.apply(&BigUint::from(984u32)).unwrap(), BigUint::from(0u32));
        assert_eq!(t.apply(&BigUint::from(987u32)), Err(IntervalError::HOutOfRange));
        assert_eq!(t.apply_u64(984), Some(0));
    }

    #[test]
    fn t_map_full_image() {
        let cache = fib();
        assert_eq!(cache.at(10), &BigUint::from(89u32));
        let t = TruncationMap::from_m0(BigUint::from(40u32), cache.at(10).clone());
        let mut image: Vec<u64> = (0..89).map(|h| t.apply_u64(h).unwrap()).collect();
        image.sort_unstable();
        assert_eq!(image, (0..89).collect::<Vec<_>>());
    }
}

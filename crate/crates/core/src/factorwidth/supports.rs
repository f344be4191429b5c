use crate::error::{Error, Result};
use crate::symcore::Support;

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn enumerate_supports(n: usize, k: usize) -> Result<Vec<Support>> {
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!("support size k = {k} must lie in 1..={n}")));
    }
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        out.push(Support::from_sorted_unchecked(current.clone()));
        // rightmost index that can still advance
        let Some(pos) = (0..k).rev().find(|&p| current[p] < n - k + p) else {
            return Ok(out);
        };
        current[pos] += 1;
        for p in (pos + 1)..k {
            current[p] = current[p - 1] + 1;
        }
    }
}

/// `coverage[i][j]`: how many supports contain both `i` and `j`.
pub fn coverage_counts(n: usize, supports: &[Support]) -> Vec<Vec<usize>> {
    let mut counts = vec![vec![0; n]; n];
    for s in supports {
        let idx = s.indices();
        for &i in idx {
            for &j in idx {
                counts[i][j] += 1;
            }
        }
    }
    counts
}

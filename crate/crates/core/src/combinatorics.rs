//! Deterministic subset, set-partition and injection enumeration.

use crate::error::{Error, Result};

pub const MAX_SUBSET_SIZE: usize = 12;
pub const MAX_PARTITION_SIZE: usize = 8;

/// All subsets of `{0, .., n-1}` as bitmasks, in increasing mask order.
pub fn subsets(n: usize) -> Result<impl Iterator<Item = u32>> {
    if n > MAX_SUBSET_SIZE {
        return Err(Error::Resource(format!(
            "subset enumeration over {n} tangents exceeds the limit of {MAX_SUBSET_SIZE}"
        )));
    }
    Ok(0..(1u32 << n))
}

/// Indices selected by `mask`, ascending.
pub fn mask_members(mask: u32, n: usize) -> impl Iterator<Item = usize> {
    (0..n).filter(move |i| mask & (1 << i) != 0)
}

/// Pick the entries of `items` selected by `mask`.
pub fn select<T: Clone>(items: &[T], mask: u32) -> Vec<T> {
    mask_members(mask, items.len()).map(|i| items[i].clone()).collect()
}

/// All set partitions of `{0, .., n-1}`, each as a list of blocks sorted by
/// least element. Generated from restricted growth strings in lexicographic
/// order. The empty set has exactly one (empty) partition.
pub fn set_partitions(n: usize) -> Result<Vec<Vec<Vec<usize>>>> {
    if n > MAX_PARTITION_SIZE {
        return Err(Error::Resource(format!(
            "partition enumeration over {n} tangents exceeds the limit of {MAX_PARTITION_SIZE}"
        )));
    }
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    fn rec(i: usize, max: usize, rgs: &mut Vec<usize>, out: &mut Vec<Vec<Vec<usize>>>) {
        let n = rgs.len();
        if i == n {
            let blocks = if n == 0 { 0 } else { max + 1 };
            let mut parts = vec![Vec::new(); blocks];
            for (idx, &b) in rgs.iter().enumerate() {
                parts[b].push(idx);
            }
            out.push(parts);
            return;
        }
        let limit = if i == 0 { 0 } else { max + 1 };
        for b in 0..=limit {
            rgs[i] = b;
            rec(i + 1, max.max(b), rgs, out);
        }
    }
    rec(0, 0, &mut rgs, &mut out);
    Ok(out)
}

/// All injective maps `{0..k} -> targets`, as vectors of images.
pub fn injections(k: usize, targets: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    let mut used = vec![false; targets.len()];
    fn rec(k: usize, targets: &[usize], used: &mut [bool], current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for t in 0..targets.len() {
            if !used[t] {
                used[t] = true;
                current.push(targets[t]);
                rec(k, targets, used, current, out);
                current.pop();
                used[t] = false;
            }
        }
    }
    if k <= targets.len() {
        rec(k, targets, &mut used, &mut current, &mut out);
    }
    out
}

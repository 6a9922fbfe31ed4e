//! Fixed-width bit rows used for adjacency matrices and vertex sets.
//!
//! A [`BitRow`] is a plain `Vec<u64>`; the owning structure knows the width.
//! All helpers here are free functions over `&[u64]` / `&mut [u64]` so the
//! same code serves adjacency rows and scratch sets in the search code.

/// Number of 64-bit words needed for `n` bits.
#[inline]
pub fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

/// A heap-allocated row of bits.
pub type BitRow = Vec<u64>;

/// All-zero row wide enough for `n` bits.
#[inline]
pub fn zero_row(n: usize) -> BitRow {
    vec![0u64; words_for(n)]
}

/// Row with bits `0..n` all set.
pub fn full_row(n: usize) -> BitRow {
    let mut row = zero_row(n);
    for i in 0..n {
        set(&mut row, i);
    }
    row
}

#[inline]
pub fn set(row: &mut [u64], i: usize) {
    row[i / 64] |= 1u64 << (i % 64);
}

#[inline]
pub fn clear(row: &mut [u64], i: usize) {
    row[i / 64] &= !(1u64 << (i % 64));
}

#[inline]
pub fn get(row: &[u64], i: usize) -> bool {
    (row[i / 64] >> (i % 64)) & 1 == 1
}

#[inline]
pub fn count(row: &[u64]) -> usize {
    row.iter().map(|w| w.count_ones() as usize).sum()
}

pub fn is_empty(row: &[u64]) -> bool {
    row.iter().all(|&w| w == 0)
}

pub fn and_assign(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d &= s;
    }
}

pub fn or_assign(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d |= s;
    }
}

pub fn and_not_assign(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d &= !s;
    }
}

/// Intersection into a fresh row.
pub fn and(a: &[u64], b: &[u64]) -> BitRow {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

pub fn intersects(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).any(|(x, y)| x & y != 0)
}

/// Index of the lowest set bit, if any.
pub fn first(row: &[u64]) -> Option<usize> {
    for (w, &word) in row.iter().enumerate() {
        if word != 0 {
            return Some(w * 64 + word.trailing_zeros() as usize);
        }
    }
    None
}

/// Iterate indices of set bits in ascending order.
pub fn iter_ones(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(w, &word)| {
        let mut word = word;
        std::iter::from_fn(move || {
            if word == 0 {
                None
            } else {
                let bit = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * 64 + bit)
            }
        })
    })
}

/// Collect set bits into a sorted vector.
pub fn to_vec(row: &[u64]) -> Vec<usize> {
    iter_ones(row).collect()
}

/// OR `src` (a row of `src_width` bits) into `dst` starting at bit `offset`.
///
/// Used by the strong product to place one factor's closed neighborhood row
/// at each block position of the product row.
pub fn or_shifted(dst: &mut [u64], src: &[u64], src_width: usize, offset: usize) {
    let word_off = offset / 64;
    let bit_off = offset % 64;
    let src_words = words_for(src_width);
    for w in 0..src_words {
        let s = src[w];
        if s == 0 {
            continue;
        }
        dst[word_off + w] |= s << bit_off;
        if bit_off != 0 && word_off + w + 1 < dst.len() {
            dst[word_off + w + 1] |= s >> (64 - bit_off);
        }
    }
}

/// Lexicographic comparison of two sets given as bit rows (by ascending
/// member lists, i.e. {0,2} < {0,3} < {1}).
pub fn cmp_sets(a: &[u64], b: &[u64]) -> std::cmp::Ordering {
    let mut ia = iter_ones(a);
    let mut ib = iter_ones(b);
    loop {
        match (ia.next(), ib.next()) {
            (None, None) => return std::cmp::Ordering::Equal,
            (None, Some(_)) => return std::cmp::Ordering::Less,
            (Some(_), None) => return std::cmp::Ordering::Greater,
            (Some(x), Some(y)) => {
                if x != y {
                    return x.cmp(&y);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_get_count() {
        let mut row = zero_row(130);
        set(&mut row, 0);
        set(&mut row, 64);
        set(&mut row, 129);
        assert!(get(&row, 0) && get(&row, 64) && get(&row, 129));
        assert!(!get(&row, 1));
        assert_eq!(count(&row), 3);
        assert_eq!(to_vec(&row), vec![0, 64, 129]);
        clear(&mut row, 64);
        assert_eq!(count(&row), 2);
    }

    #[test]
    fn shifted_or_crosses_word_boundaries() {
        let mut dst = zero_row(200);
        let mut src = zero_row(10);
        set(&mut src, 0);
        set(&mut src, 9);
        or_shifted(&mut dst, &src, 10, 60);
        assert_eq!(to_vec(&dst), vec![60, 69]);
    }

    #[test]
    fn set_ordering() {
        let mut a = zero_row(8);
        let mut b = zero_row(8);
        set(&mut a, 0);
        set(&mut a, 2);
        set(&mut b, 0);
        set(&mut b, 3);
        assert_eq!(cmp_sets(&a, &b), std::cmp::Ordering::Less);
    }
}

//! Fixed-width cell bitsets stored as `&[u64]` slices, bit `i` = cell `i`.

#[inline]
pub(crate) fn test(bits: &[u64], i: usize) -> bool {
    bits[i >> 6] >> (i & 63) & 1 == 1
}

#[inline]
pub(crate) fn set(bits: &mut [u64], i: usize) {
    bits[i >> 6] |= 1 << (i & 63);
}

#[inline]
pub(crate) fn clear(bits: &mut [u64], i: usize) {
    bits[i >> 6] &= !(1 << (i & 63));
}

#[inline]
pub(crate) fn count(bits: &[u64]) -> usize {
    bits.iter().map(|w| w.count_ones() as usize).sum()
}

#[inline]
pub(crate) fn and_not(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d &= !s;
    }
}

#[inline]
pub(crate) fn lowest(bits: &[u64]) -> Option<usize> {
    bits.iter().position(|&w| w != 0).map(|i| i * 64 + bits[i].trailing_zeros() as usize)
}

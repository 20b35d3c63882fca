//! Merge sort driven by a fallible comparator.

/// Sorts `items` with `before(a, b)`, which answers whether `a` goes before
/// `b` or aborts with a witness. Bottom-up and stable; never panics on an
/// inconsistent comparator.
pub fn merge_sort_by<T, W, F>(items: &[T], mut before: F) -> Result<Vec<T>, W>
where
    T: Copy,
    F: FnMut(T, T) -> Result<bool, W>,
{
    let mut buf: Vec<T> = items.to_vec();
    let mut tmp: Vec<T> = Vec::with_capacity(items.len());
    let n = buf.len();
    let mut width = 1;
    while width < n {
        tmp.clear();
        let mut lo = 0;
        while lo < n {
            let mid = (lo + width).min(n);
            let hi = (lo + 2 * width).min(n);
            let (mut i, mut j) = (lo, mid);
            while i < mid && j < hi {
                if before(buf[j], buf[i])? {
                    tmp.push(buf[j]);
                    j += 1;
                } else {
                    tmp.push(buf[i]);
                    i += 1;
                }
            }
            tmp.extend_from_slice(&buf[i..mid]);
            tmp.extend_from_slice(&buf[j..hi]);
            lo = hi;
        }
        std::mem::swap(&mut buf, &mut tmp);
        width *= 2;
    }
    Ok(buf)
}

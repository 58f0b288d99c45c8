//! Test-error-pattern enumeration: all support sets of size 0..=max_w over
//! n positions, in weight order and lexicographic within each weight.

use std::ops::ControlFlow;

/// Calls `f` with every support set (sorted ascending) of weight 0..=max_w,
/// smallest weights first, lexicographic within a weight. `f` can stop the
/// walk early; returns true when the enumeration ran to completion.
pub fn for_each_support(
    n: usize,
    max_w: usize,
    mut f: impl FnMut(&[usize]) -> ControlFlow<()>,
) -> bool {
    if f(&[]).is_break() {
        return false;
    }
    let mut idx = Vec::with_capacity(max_w.min(n));
    for w in 1..=max_w.min(n) {
        idx.clear();
        idx.extend(0..w);
        'walk: loop {
            if f(&idx).is_break() {
                return false;
            }
            // Advance the rightmost index that still has room; everything
            // after it restarts just above it.
            let mut i = w;
            while i > 0 {
                i -= 1;
                if idx[i] < n - w + i {
                    idx[i] += 1;
                    for j in i + 1..w {
                        idx[j] = idx[j - 1] + 1;
                    }
                    continue 'walk;
                }
            }
            break;
        }
    }
    true
}

/// Number of supports enumerated: sum of C(n, w) for w = 0..=max_w.
#[must_use]
pub fn support_count(n: usize, max_w: usize) -> u64 {
    let mut total = 0u64;
    let mut c = 1u64;
    for w in 0..=max_w.min(n) {
        if w > 0 {
            c = c * (n as u64 - w as u64 + 1) / w as u64;
        }
        total += c;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn collect(n: usize, max_w: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for_each_support(n, max_w, |s| {
            out.push(s.to_vec());
            ControlFlow::Continue(())
        });
        out
    }

    #[test]
    fn order_is_weight_then_lex() {
        let got = collect(4, 2);
        let want: Vec<Vec<usize>> = vec![
            vec![],
            vec![0],
            vec![1],
            vec![2],
            vec![3],
            vec![0, 1],
            vec![0, 2],
            vec![0, 3],
            vec![1, 2],
            vec![1, 3],
            vec![2, 3],
        ];
        assert_eq!(got, want);
    }

    #[test]
    fn counts_match_binomial_sums() {
        for n in 0..=10 {
            for w in 0..=n + 2 {
                let got = collect(n, w);
                assert_eq!(got.len() as u64, support_count(n, w), "n={n} w={w}");
                // All supports distinct and sorted.
                for s in &got {
                    assert!(s.windows(2).all(|p| p[0] < p[1]));
                    assert!(s.iter().all(|&i| i < n));
                }
                let mut dedup = got.clone();
                dedup.sort();
                dedup.dedup();
                assert_eq!(dedup.len(), got.len());
            }
        }
        assert_eq!(support_count(30, 3), 1 + 30 + 435 + 4060);
        assert_eq!(support_count(50, 5), 2_369_936);
    }

    #[test]
    fn early_exit_reports_incomplete() {
        let mut seen = 0;
        let complete = for_each_support(5, 2, |_| {
            seen += 1;
            if seen == 4 {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        assert!(!complete);
        assert_eq!(seen, 4);
    }

    #[test]
    fn zero_positions_yields_only_empty() {
        assert_eq!(collect(0, 3), vec![Vec::<usize>::new()]);
    }
}

use super::FiniteSpace;

/// Finds an order isomorphism `a → b` (as a point map) by backtracking over
/// points with matching up/down degrees. Intended for small spaces.
pub fn find_isomorphism(a: &FiniteSpace, b: &FiniteSpace) -> Option<Vec<usize>> {
    let n = a.len();
    if n != b.len() || a.hasse_edges().len() != b.hasse_edges().len() {
        return None;
    }
    let signature = |s: &FiniteSpace, x: usize| {
        (
            s.down(x).len(),
            s.up(x).len(),
            s.lower_covers(x).len(),
            s.upper_covers(x).len(),
        )
    };
    let sig_a: Vec<_> = (0..n).map(|x| signature(a, x)).collect();
    let sig_b: Vec<_> = (0..n).map(|x| signature(b, x)).collect();
    let mut sorted_a = sig_a.clone();
    let mut sorted_b = sig_b.clone();
    sorted_a.sort_unstable();
    sorted_b.sort_unstable();
    if sorted_a != sorted_b {
        return None;
    }

    let order = a.linear_extension();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn extend(
        depth: usize,
        order: &[usize],
        a: &FiniteSpace,
        b: &FiniteSpace,
        sig_a: &[(usize, usize, usize, usize)],
        sig_b: &[(usize, usize, usize, usize)],
        image: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let x = order[depth];
        for y in 0..b.len() {
            if used[y] || sig_a[x] != sig_b[y] {
                continue;
            }
            let consistent = order[..depth].iter().all(|&p| {
                let q = image[p];
                a.leq(p, x) == b.leq(q, y) && a.leq(x, p) == b.leq(y, q)
            });
            if !consistent {
                continue;
            }
            image[x] = y;
            used[y] = true;
            if extend(depth + 1, order, a, b, sig_a, sig_b, image, used) {
                return true;
            }
            used[y] = false;
        }
        image[x] = usize::MAX;
        false
    }

    extend(0, &order, a, b, &sig_a, &sig_b, &mut image, &mut used).then_some(image)
}

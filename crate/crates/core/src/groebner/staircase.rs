//! Standard monomials of a monomial ideal, counted by walking its staircase.

use crate::algebra::Monomial;

/// Exponent bounds from pure powers: `bounds[i]` is the smallest `a` with
/// `x_i^a` among the generators. `None` if some variable has no pure power
/// (infinitely many standard monomials).
fn pure_power_bounds(gens: &[Monomial], nvars: usize) -> Option<Vec<u32>> {
    let mut bounds = vec![u32::MAX; nvars];
    for g in gens {
        let support: Vec<usize> = (0..nvars).filter(|&i| g.exponent(i) > 0).collect();
        if support.len() == 1 {
            let i = support[0];
            bounds[i] = bounds[i].min(g.exponent(i));
        }
    }
    if bounds.contains(&u32::MAX) {
        None
    } else {
        Some(bounds)
    }
}

/// Walks the staircase. `visit` is called with each prefix
/// `(e_0, ..., e_{n-2})` and the number of standard monomials above it
/// (the cutoff in the last variable).
fn walk(gens: &[Monomial], nvars: usize, bounds: &[u32], visit: &mut impl FnMut(&[u32], u32)) {
    fn rec(
        level: usize,
        nvars: usize,
        prefix: &mut Vec<u32>,
        gens: &[&Monomial],
        bounds: &[u32],
        visit: &mut impl FnMut(&[u32], u32),
    ) -> u64 {
        if level + 1 == nvars {
            // Every applicable generator's last exponent caps the column.
            let cutoff = gens.iter().map(|g| g.exponent(level)).min().unwrap_or(bounds[level]);
            if cutoff > 0 {
                visit(prefix, cutoff);
            }
            return cutoff as u64;
        }
        let mut total = 0;
        for e in 0..bounds[level] {
            let applicable: Vec<&Monomial> = gens.iter().copied().filter(|g| g.exponent(level) <= e).collect();
            prefix.push(e);
            let c = rec(level + 1, nvars, prefix, &applicable, bounds, visit);
            prefix.pop();
            if c == 0 {
                break;
            }
            total += c;
        }
        total
    }
    if nvars == 0 {
        if gens.is_empty() {
            visit(&[], 1);
        }
        return;
    }
    let refs: Vec<&Monomial> = gens.iter().collect();
    let mut prefix = Vec::with_capacity(nvars);
    rec(0, nvars, &mut prefix, &refs, bounds, visit);
}

/// Number of monomials not divisible by any of `gens`, or `None` when that
/// set is infinite.
pub fn staircase_count(gens: &[Monomial], nvars: usize) -> Option<u64> {
    if gens.iter().any(|g| g.is_one()) {
        return Some(0);
    }
    if nvars == 0 {
        return Some(1);
    }
    let bounds = pure_power_bounds(gens, nvars)?;
    let mut total = 0u64;
    walk(gens, nvars, &bounds, &mut |_, c| total += c as u64);
    Some(total)
}

/// The standard monomials themselves (unsorted), or `None` when infinite.
pub fn staircase_monomials(gens: &[Monomial], nvars: usize) -> Option<Vec<Monomial>> {
    if gens.iter().any(|g| g.is_one()) {
        return Some(Vec::new());
    }
    if nvars == 0 {
        return Some(vec![Monomial::one(0)]);
    }
    let bounds = pure_power_bounds(gens, nvars)?;
    let mut out = Vec::new();
    walk(gens, nvars, &bounds, &mut |prefix, cutoff| {
        let mut exps = prefix.to_vec();
        exps.push(0);
        for last in 0..cutoff {
            exps[nvars - 1] = last;
            out.push(Monomial::from_exponents(&exps));
        }
    });
    Some(out)
}

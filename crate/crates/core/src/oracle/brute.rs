use std::collections::HashMap;

use super::enumerate::{enumerate_elements, Element};
use crate::error::Result;
use crate::gog::GraphOfGroups;
use crate::path::PathWord;

/// Enumerated loops of complexity at most `l` commuting with `g`.
pub fn brute_centralizer(gog: &GraphOfGroups, g: &PathWord, l: usize) -> Result<Vec<PathWord>> {
    Ok(brute_centralizer_in(gog, g, &enumerate_elements(gog, l)?))
}

pub fn brute_centralizer_in(gog: &GraphOfGroups, g: &PathWord, elems: &[Element]) -> Vec<PathWord> {
    elems.iter().filter(|y| gog.eq(&gog.cat(g, &y.path), &gog.cat(&y.path, g))).map(|y| y.path.clone()).collect()
}

pub type CommuteTable = (Vec<Element>, Vec<(usize, usize)>);

/// Loops of complexity at most `l` and the index pairs `i < j` of those that commute.
pub fn brute_commute_table(gog: &GraphOfGroups, l: usize) -> Result<CommuteTable> {
    let elems = enumerate_elements(gog, l)?;
    let mut pairs = vec![];
    for i in 0..elems.len() {
        for j in i + 1..elems.len() {
            let (x, y) = (&elems[i].path, &elems[j].path);
            if gog.eq(&gog.cat(x, y), &gog.cat(y, x)) {
                pairs.push((i, j));
            }
        }
    }
    Ok((elems, pairs))
}

/// For every enumerated loop `x`: the largest `n ≤ max_n` with `x = yⁿ` for an enumerated `y`
/// (or `y = x`), and that `y`. Keys are normal forms.
pub fn brute_divisibility_table(gog: &GraphOfGroups, elems: &[Element], max_n: i64) -> HashMap<PathWord, (i64, PathWord)> {
    let mut best: HashMap<PathWord, (i64, PathWord)> = elems.iter().map(|e| (e.path.clone(), (1, e.path.clone()))).collect();
    let max_len = elems.iter().map(|e| e.path.len()).max().unwrap_or(0);
    for y in elems {
        let mut p = y.path.clone();
        for n in 2..=max_n {
            p = gog.reduced(&gog.cat(&p, &y.path));
            // Reduced lengths of powers only grow for hyperbolic `y` and stay bounded otherwise.
            if p.len() > max_len {
                break;
            }
            if let Some(entry) = best.get_mut(&gog.normal_form(&p)) {
                if n > entry.0 {
                    *entry = (n, y.path.clone());
                }
            }
        }
    }
    best
}

/// Largest `n ≤ max_n` with `x = yⁿ` for some loop `y` of complexity at most `l` (or `y = x`).
pub fn brute_divisibility(gog: &GraphOfGroups, x: &PathWord, l: usize, max_n: i64) -> Result<(i64, PathWord)> {
    let target = gog.normal_form(x);
    let mut best = (1, x.clone());
    for y in enumerate_elements(gog, l)? {
        let mut p = y.path.clone();
        for n in 2..=max_n {
            p = gog.reduced(&gog.cat(&p, &y.path));
            if n > best.0 && gog.normal_form(&p) == target {
                best = (n, y.path.clone());
            }
        }
    }
    Ok(best)
}

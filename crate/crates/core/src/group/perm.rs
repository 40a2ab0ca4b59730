//! Permutations as image arrays, composed right to left: `(ab)(x) = a(b(x))`.

use std::collections::HashMap;

use crate::error::{Error, Result};

pub type Perm = Vec<usize>;

pub fn identity(degree: usize) -> Perm {
    (0..degree).collect()
}

pub fn compose(a: &[usize], b: &[usize]) -> Perm {
    b.iter().map(|&x| a[x]).collect()
}

pub fn inverse(a: &[usize]) -> Perm {
    let mut out = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x] = i;
    }
    out
}

pub fn is_bijection(a: &[usize], degree: usize) -> bool {
    if a.len() != degree {
        return false;
    }
    let mut seen = vec![false; degree];
    for &x in a {
        if x >= degree || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// Parses cycle notation such as `(0 1 2)(3 4)` on `degree` points.
pub fn parse_cycles(s: &str, degree: usize) -> Result<Perm> {
    let mut p = identity(degree);
    let s = s.trim();
    if s.is_empty() || s == "()" {
        return Ok(p);
    }
    for part in s.split(')') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let body = part
            .strip_prefix('(')
            .ok_or_else(|| Error::Parse(format!("expected `(` in cycle `{part}`")))?;
        let pts: Vec<usize> = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad point `{t}`"))))
            .collect::<Result<_>>()?;
        let mut cyc = identity(degree);
        let mut seen = vec![false; degree];
        for (k, &x) in pts.iter().enumerate() {
            if x >= degree {
                return Err(Error::Parse(format!("point {x} outside degree {degree}")));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::Parse(format!("cycle `{part})` repeats point {x}")));
            }
            cyc[x] = pts[(k + 1) % pts.len()];
        }
        p = compose(&p, &cyc);
    }
    Ok(p)
}

/// Closure of `gens` under composition, sorted lexicographically (so the
/// identity comes first), with its multiplication table.
pub fn closure(degree: usize, gens: &[Perm], cap: usize) -> Result<(Vec<Perm>, Vec<Vec<usize>>)> {
    for g in gens {
        if !is_bijection(g, degree) {
            return Err(Error::InvalidInput(format!("generator {g:?} is not a permutation of {degree} points")));
        }
    }
    let mut elems = vec![identity(degree)];
    let mut index: HashMap<Perm, usize> = HashMap::from([(identity(degree), 0)]);
    let mut frontier = 0;
    while frontier < elems.len() {
        let x = elems[frontier].clone();
        frontier += 1;
        for g in gens {
            let y = compose(&x, g);
            if !index.contains_key(&y) {
                if elems.len() >= cap {
                    return Err(Error::TooLarge { cap });
                }
                index.insert(y.clone(), elems.len());
                elems.push(y);
            }
        }
    }
    elems.sort();
    let index: HashMap<&[usize], usize> = elems.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let table = elems
        .iter()
        .map(|a| elems.iter().map(|b| index[compose(a, b).as_slice()]).collect())
        .collect();
    Ok((elems, table))
}

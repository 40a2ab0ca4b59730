//! Built-in groups by name.
//!
//! Names: `C<n>` (cyclic, `C1` trivial), `V4`, `S3`, `S4`, `D4`, `Q8`, `A4`,
//! `A6`. Products are written with `x` (or `×`), e.g. `V4xC2`, `V4×V4`,
//! grouping to the left unless parenthesized: `C2x(C2xC2)`.

use super::perm::parse_cycles;
use super::FiniteGroup;
use crate::error::{Error, Result};

pub const BUILTIN_NAMES: &[&str] = &["C1..Cn", "V4", "S3", "S4", "D4", "Q8", "A4", "A6"];

pub fn named(name: &str) -> Result<FiniteGroup> {
    let cleaned: String = name.chars().filter(|c| !c.is_whitespace()).map(|c| if c == '×' { 'x' } else { c }).collect();
    if cleaned.is_empty() {
        return Err(Error::UnknownGroup(name.to_string()));
    }
    let mut parser = Parser { s: cleaned.as_bytes(), pos: 0, original: name };
    let g = parser.product()?;
    if parser.pos != parser.s.len() {
        return Err(Error::UnknownGroup(name.to_string()));
    }
    Ok(g)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    original: &'a str,
}

impl Parser<'_> {
    fn product(&mut self) -> Result<FiniteGroup> {
        let mut g = self.atom()?;
        while self.s.get(self.pos) == Some(&b'x') {
            self.pos += 1;
            let h = self.atom()?;
            g = FiniteGroup::direct_product(&g, &h)?;
        }
        Ok(g)
    }

    fn atom(&mut self) -> Result<FiniteGroup> {
        if self.s.get(self.pos) == Some(&b'(') {
            self.pos += 1;
            let g = self.product()?;
            if self.s.get(self.pos) != Some(&b')') {
                return Err(Error::UnknownGroup(self.original.to_string()));
            }
            self.pos += 1;
            return Ok(g);
        }
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphanumeric() && self.s[self.pos] != b'x' {
            self.pos += 1;
        }
        let token = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
        builtin(token).ok_or_else(|| Error::UnknownGroup(token.to_string()))
    }
}

fn perm_group(name: &str, degree: usize, cycles: &[&str]) -> FiniteGroup {
    let gens: Vec<_> = cycles.iter().map(|c| parse_cycles(c, degree).expect("valid built-in")).collect();
    FiniteGroup::from_permutations(degree, &gens).expect("built-in within cap").with_name(name)
}

fn builtin(token: &str) -> Option<FiniteGroup> {
    let t = token.to_ascii_uppercase();
    Some(match t.as_str() {
        "V4" => FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)).ok()?.with_name("V4"),
        "S3" => perm_group("S3", 3, &["(0 1 2)", "(0 1)"]),
        "S4" => perm_group("S4", 4, &["(0 1 2 3)", "(0 1)"]),
        "D4" => perm_group("D4", 4, &["(0 1 2 3)", "(1 3)"]),
        "A4" => perm_group("A4", 4, &["(0 1 2)", "(0 1)(2 3)"]),
        "A6" => perm_group("A6", 6, &["(0 1 2)", "(1 2 3 4 5)"]),
        "Q8" => quaternion(),
        _ => {
            let n: usize = t.strip_prefix('C')?.parse().ok()?;
            if n == 0 {
                return None;
            }
            FiniteGroup::cyclic(n)
        }
    })
}

/// `{±1, ±i, ±j, ±k}` with index `2u + s` for unit `u` in `1, i, j, k` and sign bit `s`.
fn quaternion() -> FiniteGroup {
    // unit product table: (unit, sign)
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (1, 0), (2, 0), (3, 0)],
        [(1, 0), (0, 1), (3, 0), (2, 1)],
        [(2, 0), (3, 1), (0, 1), (1, 0)],
        [(3, 0), (2, 0), (1, 1), (0, 1)],
    ];
    let table: Vec<Vec<usize>> = (0..8)
        .map(|a| {
            (0..8)
                .map(|b| {
                    let (u, s) = UNIT[a / 2][b / 2];
                    2 * u + ((a % 2) ^ (b % 2) ^ s)
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_cayley_table(&table).expect("Q8 table").with_name("Q8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        for (name, order) in [
            ("C1", 1),
            ("C5", 5),
            ("V4", 4),
            ("S3", 6),
            ("S4", 24),
            ("D4", 8),
            ("Q8", 8),
            ("A4", 12),
            ("A6", 360),
            ("V4xC2", 8),
            ("V4×V4", 16),
            ("C2x(C2xC2)", 8),
        ] {
            assert_eq!(named(name).unwrap().order(), order, "{name}");
        }
    }

    #[test]
    fn structure() {
        assert_eq!(named("V4").unwrap().exponent(), 2);
        assert_eq!(named("V4xV4").unwrap().exponent(), 2);
        assert!(!named("Q8").unwrap().is_abelian());
        assert_eq!(named("Q8").unwrap().exponent(), 4);
        assert!(!named("D4").unwrap().is_abelian());
        let q8 = named("Q8").unwrap();
        assert_eq!(q8.elements().filter(|&x| q8.element_order(x) == 2).count(), 1);
    }

    #[test]
    fn unknown_names() {
        assert!(matches!(named("Z7"), Err(Error::UnknownGroup(_))));
        assert!(named("C0").is_err());
        assert!(named("C2x").is_err());
    }
}

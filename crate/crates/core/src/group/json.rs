//! JSON group descriptions.
//!
//! ```json
//! {"kind": "cayley", "table": [[0, 1], [1, 0]]}
//! {"kind": "perm", "degree": 3, "generators": [[1, 2, 0], [1, 0, 2]]}
//! {"kind": "named", "name": "V4xC2"}
//! {"kind": "product", "left": {...}, "right": {...}}
//! ```
//!
//! Permutations are arrays of 0-based images. Products index the pair
//! `(x, y)` as `x * |right| + y`.

use serde::{Deserialize, Serialize};

use super::{named::named, FiniteGroup};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GroupSpec {
    Cayley { table: Vec<Vec<usize>> },
    Perm { degree: usize, generators: Vec<Vec<usize>> },
    Named { name: String },
    Product { left: Box<GroupSpec>, right: Box<GroupSpec> },
}

impl GroupSpec {
    pub fn build(&self, order_cap: usize) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Cayley { table } => FiniteGroup::from_cayley_table(table),
            GroupSpec::Perm { degree, generators } => FiniteGroup::from_permutations_capped(*degree, generators, order_cap),
            GroupSpec::Named { name } => named(name),
            GroupSpec::Product { left, right } => {
                FiniteGroup::direct_product_capped(&left.build(order_cap)?, &right.build(order_cap)?, order_cap)
            }
        }
    }

    /// Accepts either a JSON object or a bare built-in name.
    pub fn parse(text: &str) -> Result<GroupSpec> {
        let t = text.trim();
        if t.starts_with('{') {
            Ok(serde_json::from_str(t)?)
        } else {
            Ok(GroupSpec::Named { name: t.to_string() })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::DEFAULT_ORDER_CAP;

    #[test]
    fn round_trip_and_build() {
        let text = r#"{"kind":"product","left":{"kind":"named","name":"C2"},"right":{"kind":"perm","degree":3,"generators":[[1,2,0]]}}"#;
        let spec: GroupSpec = serde_json::from_str(text).unwrap();
        assert_eq!(serde_json::to_string(&spec).unwrap(), text);
        let g = spec.build(DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.product_structure().is_some());
    }

    #[test]
    fn cayley_kind() {
        let spec = GroupSpec::parse(r#"{"kind":"cayley","table":[[0,1],[1,0]]}"#).unwrap();
        assert_eq!(spec.build(DEFAULT_ORDER_CAP).unwrap().order(), 2);
        assert!(GroupSpec::parse(r#"{"kind":"other"}"#).is_err());
    }
}

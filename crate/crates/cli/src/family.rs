//! Named connection-set families for batch scans.
//!
//! Each family maps one integer parameter to a concrete `(n, S)` instance:
//!
//! | id           | parameter | instance                                        |
//! |--------------|-----------|-------------------------------------------------|
//! | example-5.1  | m >= 2    | n = 2m, S = {ba, ba^{m-1}, ba^{m+1}, ba^{n-1}}   |
//! | example-5.2  | m >= 2    | n = 2m, S = {a, a^{m-1}, a^{m+1}, a^{n-1}}       |
//! | example-5.3a | even n    | S = b<a> (all reflections)                       |
//! | example-5.3b | even n    | S = b<a^2> (even-exponent reflections)           |
//! | example-5.4  | n >= 2    | S = {b, ba}                                      |
//!
//! Odd parameters are skipped by the coset families rather than rejected, so
//! ranges like `--from 2 --to 8` do the expected thing.

use std::str::FromStr;

use dgrover_core::dihedral::{ConnectionSet, DihedralElement};

use crate::parse::SetExpression;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Four reflections around the half-turn; n = 2m.
    ReflectionQuad,
    /// Four rotations around the half-turn (disconnected graphs); n = 2m.
    RotationQuad,
    /// All n reflections (complete bipartite graph).
    AllReflections,
    /// The even-exponent reflection coset.
    EvenReflections,
    /// The adjacent pair {b, ba} (a 2n-cycle).
    AdjacentPair,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::ReflectionQuad,
        Family::RotationQuad,
        Family::AllReflections,
        Family::EvenReflections,
        Family::AdjacentPair,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Family::ReflectionQuad => "example-5.1",
            Family::RotationQuad => "example-5.2",
            Family::AllReflections => "example-5.3a",
            Family::EvenReflections => "example-5.3b",
            Family::AdjacentPair => "example-5.4",
        }
    }

    /// Lower bound of the parameter domain.
    pub fn min_param(self) -> i64 {
        2
    }

    /// Build the instance for one parameter value.
    ///
    /// `Ok(None)` means the value is skipped (odd order for the coset
    /// families); out-of-domain values are an error.
    pub fn instantiate(self, param: i64) -> Result<Option<(usize, SetExpression)>, CliError> {
        if param < self.min_param() {
            return Err(CliError::Usage(format!(
                "family {} needs a parameter of at least {}, got {param}",
                self.id(),
                self.min_param()
            )));
        }
        let build = |n: usize, elems: Vec<DihedralElement>| -> Result<_, CliError> {
            let conn = ConnectionSet::new(n, elems)?;
            Ok(Some((n, SetExpression::from_connection(conn))))
        };
        match self {
            Family::ReflectionQuad => {
                let (m, n) = (param, 2 * param as usize);
                build(
                    n,
                    [1, m - 1, m + 1, 2 * m - 1]
                        .map(|k| DihedralElement::reflection(k, n))
                        .to_vec(),
                )
            }
            Family::RotationQuad => {
                let (m, n) = (param, 2 * param as usize);
                build(
                    n,
                    [1, m - 1, m + 1, 2 * m - 1]
                        .map(|k| DihedralElement::rotation(k, n))
                        .to_vec(),
                )
            }
            Family::AllReflections => {
                if param % 2 != 0 {
                    return Ok(None);
                }
                let n = param as usize;
                build(
                    n,
                    (0..n as i64)
                        .map(|k| DihedralElement::reflection(k, n))
                        .collect(),
                )
            }
            Family::EvenReflections => {
                if param % 2 != 0 {
                    return Ok(None);
                }
                let n = param as usize;
                build(
                    n,
                    (0..n as i64)
                        .step_by(2)
                        .map(|k| DihedralElement::reflection(k, n))
                        .collect(),
                )
            }
            Family::AdjacentPair => {
                let n = param as usize;
                build(
                    n,
                    vec![
                        DihedralElement::reflection(0, n),
                        DihedralElement::reflection(1, n),
                    ],
                )
            }
        }
    }
}

impl FromStr for Family {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.id() == s)
            .ok_or_else(|| {
                let known = Family::ALL.map(|f| f.id()).join(", ");
                CliError::Usage(format!("unknown family {s:?}; known families: {known}"))
            })
    }
}

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyhedron::Polyhedron;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Domain {
    Rational,
    Integer,
}

impl Domain {
    pub fn tag(self) -> &'static str {
        match self {
            Domain::Rational => "rat",
            Domain::Integer => "int",
        }
    }
}

/// A multipath linear-constraint loop: `k` transition polyhedra over the
/// variables `(x, x')`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MlcLoop {
    pub var_names: Vec<String>,
    pub paths: Vec<Polyhedron>,
    pub domain: Domain,
}

impl MlcLoop {
    pub fn new(var_names: Vec<String>, paths: Vec<Polyhedron>, domain: Domain) -> Result<MlcLoop> {
        let n = var_names.len();
        for (i, p) in paths.iter().enumerate() {
            if p.dim() != 2 * n {
                return Err(Error::Invalid(format!(
                    "path {} has dimension {}, expected {}",
                    i + 1,
                    p.dim(),
                    2 * n
                )));
            }
        }
        let mut seen = std::collections::HashSet::new();
        for v in &var_names {
            if !seen.insert(v) {
                return Err(Error::Invalid(format!("duplicate variable `{v}`")));
            }
        }
        Ok(MlcLoop { var_names, paths, domain })
    }

    pub fn n(&self) -> usize {
        self.var_names.len()
    }

    pub fn k(&self) -> usize {
        self.paths.len()
    }

    pub fn with_domain(&self, domain: Domain) -> MlcLoop {
        MlcLoop { domain, ..self.clone() }
    }

    /// The loop restricted to the given paths, in the given order.
    pub fn sub_loop(&self, paths: &[usize]) -> MlcLoop {
        MlcLoop {
            var_names: self.var_names.clone(),
            paths: paths.iter().map(|&i| self.paths[i].clone()).collect(),
            domain: self.domain,
        }
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.var_names.iter().position(|v| v == name)
    }
}

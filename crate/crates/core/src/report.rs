//! Axiom-check reports shared by the structure checkers.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub axiom: &'static str,
    /// Object indices of the failing instance, in the order the axiom names
    /// them.
    pub objects: Vec<usize>,
    /// First basis vector (of the domain of the compared maps) on which the
    /// two sides differ.
    pub basis_index: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub failures: Vec<Failure>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn push(&mut self, axiom: &'static str, objects: Vec<usize>, basis_index: Option<usize>) {
        self.failures.push(Failure {
            axiom,
            objects,
            basis_index,
        });
    }

    pub fn extend(&mut self, other: Report) {
        self.failures.extend(other.failures);
    }

    pub fn has(&self, axiom: &str) -> bool {
        self.failures.iter().any(|f| f.axiom == axiom)
    }

    /// Failures ordered by object tuple, then basis index, then axiom.
    pub fn sorted(mut self) -> Self {
        self.failures
            .sort_by(|a, b| (&a.objects, a.basis_index, a.axiom).cmp(&(&b.objects, b.basis_index, b.axiom)));
        self
    }

    /// Renders failures using object names.
    pub fn render(&self, names: &[String]) -> Vec<String> {
        self.failures
            .iter()
            .map(|f| {
                let objs: Vec<&str> = f.objects.iter().map(|&o| names[o].as_str()).collect();
                match f.basis_index {
                    Some(b) => format!("{} fails at ({}) on basis vector {b}", f.axiom, objs.join(", ")),
                    None => format!("{} fails at ({})", f.axiom, objs.join(", ")),
                }
            })
            .collect()
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {:?}", self.axiom, self.objects)?;
        if let Some(b) = self.basis_index {
            write!(f, " (basis vector {b})")?;
        }
        Ok(())
    }
}

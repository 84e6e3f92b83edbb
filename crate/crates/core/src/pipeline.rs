//! End-to-end computation for one module `W`.

use crate::error::Result;
use crate::group::{GroupFamily, GroupId};
use crate::hilbert::HilbertPolynomial;
use crate::modspec::{exterior_hilbert_series, ModuleSpec};
use crate::mult::{gl_decomposition, multiplicity_series_with, DegreeDecomposition, Extraction, MultiplicitySeries};
use crate::poly::SparsePoly;
use crate::specialize::hilbert_series;

/// The bigraded series `H(Λ(W); x, t)` and its multiplicity series.
#[derive(Clone, Debug)]
pub struct ExteriorAlgebra {
    spec: ModuleSpec,
    series: SparsePoly,
    multiplicities: MultiplicitySeries,
}

impl ExteriorAlgebra {
    pub fn new(spec: ModuleSpec) -> Result<Self> {
        Self::with_extraction(spec, Extraction::default())
    }

    pub fn with_extraction(spec: ModuleSpec, how: Extraction) -> Result<Self> {
        let series = exterior_hilbert_series(&spec.weights());
        let multiplicities = multiplicity_series_with(&series, spec.n(), how)?;
        Ok(ExteriorAlgebra { spec, series, multiplicities })
    }

    pub fn parse(text: &str, n: usize) -> Result<Self> {
        Self::new(ModuleSpec::parse(text, n)?)
    }

    pub fn spec(&self) -> &ModuleSpec {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.spec.n()
    }

    /// `dim W`, the top degree of `Λ(W)`.
    pub fn dim(&self) -> usize {
        self.spec.dim()
    }

    pub fn bigraded_series(&self) -> &SparsePoly {
        &self.series
    }

    pub fn multiplicities(&self) -> &MultiplicitySeries {
        &self.multiplicities
    }

    pub fn invariant_series(&self, family: GroupFamily) -> Result<HilbertPolynomial> {
        hilbert_series(&self.multiplicities, GroupId::new(family, self.n())?)
    }

    pub fn decomposition(&self) -> Result<Vec<DegreeDecomposition>> {
        gl_decomposition(&self.multiplicities)
    }
}

//! JSON-facing descriptions of groups, complexes, linear actions, and series
//! expressions, together with the scenario files the command-line tool runs.
//!
//! Each descriptor deserializes with serde and then `build`s the validated
//! core object. Shape-level problems (unknown builder names, dangling
//! references, index ranges, unparseable numbers in otherwise well-formed
//! JSON) are reported as [`Error::Scenario`] or [`Error::BadRational`], which
//! the command-line tool maps to its schema-error exit code; everything the
//! core validators reject (non-homomorphism actions, non-equivariant
//! boundaries, non-free actions, ...) keeps its own error and maps to the
//! semantic-failure exit code.

use std::collections::BTreeMap;

use num::BigRational;
use serde::Deserialize;

use crate::complex::{CwComplex, GCwComplex};
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::group::{FiniteGroup, PermAction, ORDER_CAP};
use crate::homology::ResolutionChoice;
use crate::invariant::{parse_rational, LinearAction};
use crate::poincare::SetExpr;

/// How the command-line tool renders results.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

/// A finite group: cyclic, generated by explicit permutations, or a direct
/// product of two described groups.
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupDescriptor {
    Cyclic {
        n: usize,
    },
    PermGenerators {
        degree: usize,
        generators: Vec<Vec<usize>>,
    },
    Product {
        left: Box<GroupDescriptor>,
        right: Box<GroupDescriptor>,
    },
}

impl GroupDescriptor {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupDescriptor::Cyclic { n } => {
                if *n == 0 {
                    return Err(Error::Scenario(
                        "cyclic group order must be at least 1".into(),
                    ));
                }
                if *n > ORDER_CAP {
                    return Err(Error::OrderCapExceeded {
                        found: *n,
                        cap: ORDER_CAP,
                    });
                }
                Ok(FiniteGroup::cyclic(*n))
            }
            GroupDescriptor::PermGenerators { degree, generators } => {
                FiniteGroup::from_generators(*degree, generators).map(|(group, _)| group)
            }
            GroupDescriptor::Product { left, right } => {
                FiniteGroup::direct_product(&left.build()?, &right.build()?)
            }
        }
    }
}

/// Explicit cell data for a complex without a group action: cell counts per
/// dimension and each boundary map as a list of (row, col) positions of its
/// nonzero entries, where entry q of `boundary` is the map from dimension
/// q+1 cells to dimension q cells.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlainComplexDescriptor {
    pub cells: Vec<usize>,
    #[serde(default)]
    pub boundary: Vec<Vec<(usize, usize)>>,
}

impl PlainComplexDescriptor {
    pub fn build(&self) -> Result<CwComplex> {
        let boundary = build_boundaries(&self.cells, &self.boundary)?;
        CwComplex::new(self.cells.clone(), boundary)
    }
}

fn build_boundaries(cells: &[usize], sparse: &[Vec<(usize, usize)>]) -> Result<Vec<BitMatrix>> {
    if cells.is_empty() {
        return Err(Error::Scenario(
            "a complex needs at least a dimension-0 cell count".into(),
        ));
    }
    if sparse.len() + 1 != cells.len() {
        return Err(Error::Scenario(format!(
            "complex with {} dimensions needs {} boundary maps, got {}",
            cells.len(),
            cells.len() - 1,
            sparse.len()
        )));
    }
    let mut boundary = Vec::with_capacity(sparse.len());
    for (q, entries) in sparse.iter().enumerate() {
        let mut matrix = BitMatrix::zeros(cells[q], cells[q + 1]);
        for &(row, col) in entries {
            if row >= cells[q] || col >= cells[q + 1] {
                return Err(Error::Scenario(format!(
                    "boundary {} entry ({row}, {col}) is outside its {} by {} matrix",
                    q + 1,
                    cells[q],
                    cells[q + 1]
                )));
            }
            matrix.set(row, col, true);
        }
        boundary.push(matrix);
    }
    Ok(boundary)
}

/// Explicit cell data for a complex with a group action. The `action` field
/// gives, for every dimension, one permutation of that dimension's cells per
/// designated generator of the group (in the group descriptor's generator
/// order); the action of every other element follows by composition.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDescriptor {
    pub group: GroupDescriptor,
    pub cells: Vec<usize>,
    #[serde(default)]
    pub boundary: Vec<Vec<(usize, usize)>>,
    pub action: Vec<Vec<Vec<usize>>>,
}

impl ComplexDescriptor {
    pub fn build(&self) -> Result<GCwComplex> {
        let group = self.group.build()?;
        let boundary = build_boundaries(&self.cells, &self.boundary)?;
        if self.action.len() != self.cells.len() {
            return Err(Error::Scenario(format!(
                "complex with {} dimensions needs {} action entries, got {}",
                self.cells.len(),
                self.cells.len(),
                self.action.len()
            )));
        }
        let mut actions = Vec::with_capacity(self.action.len());
        for (q, gen_perms) in self.action.iter().enumerate() {
            if gen_perms.len() != group.generators().len() {
                return Err(Error::Scenario(format!(
                    "dimension {q} needs one permutation per group generator \
                     ({} generators), got {}",
                    group.generators().len(),
                    gen_perms.len()
                )));
            }
            for perm in gen_perms {
                if perm.len() != self.cells[q] {
                    return Err(Error::Scenario(format!(
                        "dimension {q} permutations must move {} cells, got one of length {}",
                        self.cells[q],
                        perm.len()
                    )));
                }
            }
            let action = if gen_perms.is_empty() {
                PermAction::identity(group.order(), self.cells[q])
            } else {
                PermAction::extend_from_generators(&group, gen_perms)?
            };
            actions.push(action);
        }
        let complex = CwComplex::new(self.cells.clone(), boundary)?;
        GCwComplex::new(group, complex, actions)
    }
}

/// A complex with a group action: either one of the named builders or
/// explicit cell data.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum ComplexSpec {
    Builder(ComplexBuilder),
    Explicit(ComplexDescriptor),
}

impl ComplexSpec {
    pub fn build(&self) -> Result<GCwComplex> {
        match self {
            ComplexSpec::Builder(builder) => builder.build(),
            ComplexSpec::Explicit(descriptor) => descriptor.build(),
        }
    }
}

/// A named builder for a complex with a group action.
///
/// Builders and their fields:
/// - `point_trivial` (`group`): one fixed point.
/// - `free_orbit_points` (`group`): one free orbit of |G| points.
/// - `sphere_antipodal` (`d`): d-sphere with the antipodal involution.
/// - `sphere_with_fixed_point` (`d`, d >= 1): d-sphere with a
///   reflection-type involution fixing a point.
/// - `circle_two_fixed`: circle with a reflection fixing two points.
/// - `induced_free` (`group`, `base`): one free orbit of copies of a plain
///   base complex, permuted by left translation.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexBuilder {
    pub builder: String,
    #[serde(default)]
    pub d: Option<usize>,
    #[serde(default)]
    pub group: Option<GroupDescriptor>,
    #[serde(default)]
    pub base: Option<PlainComplexSpec>,
}

impl ComplexBuilder {
    fn group(&self) -> Result<FiniteGroup> {
        match &self.group {
            Some(descriptor) => descriptor.build(),
            None => Err(Error::Scenario(format!(
                "builder {:?} needs a \"group\" field",
                self.builder
            ))),
        }
    }

    fn dimension(&self) -> Result<usize> {
        self.d.ok_or_else(|| {
            Error::Scenario(format!("builder {:?} needs a \"d\" field", self.builder))
        })
    }

    fn reject_unused(&self, d: bool, group: bool, base: bool) -> Result<()> {
        if !d && self.d.is_some() {
            return Err(Error::Scenario(format!(
                "builder {:?} does not take \"d\"",
                self.builder
            )));
        }
        if !group && self.group.is_some() {
            return Err(Error::Scenario(format!(
                "builder {:?} does not take \"group\"",
                self.builder
            )));
        }
        if !base && self.base.is_some() {
            return Err(Error::Scenario(format!(
                "builder {:?} does not take \"base\"",
                self.builder
            )));
        }
        Ok(())
    }

    pub fn build(&self) -> Result<GCwComplex> {
        match self.builder.as_str() {
            "point_trivial" => {
                self.reject_unused(false, true, false)?;
                Ok(GCwComplex::point_trivial(&self.group()?))
            }
            "free_orbit_points" => {
                self.reject_unused(false, true, false)?;
                Ok(GCwComplex::free_orbit_points(&self.group()?))
            }
            "sphere_antipodal" => {
                self.reject_unused(true, false, false)?;
                Ok(GCwComplex::sphere_antipodal(self.dimension()?))
            }
            "sphere_with_fixed_point" => {
                self.reject_unused(true, false, false)?;
                let d = self.dimension()?;
                if d == 0 {
                    return Err(Error::Scenario(
                        "sphere_with_fixed_point needs dimension at least 1".into(),
                    ));
                }
                Ok(GCwComplex::sphere_with_fixed_point(d))
            }
            "circle_two_fixed" => {
                self.reject_unused(false, false, false)?;
                Ok(GCwComplex::circle_two_fixed())
            }
            "induced_free" => {
                self.reject_unused(false, true, true)?;
                let base = match &self.base {
                    Some(spec) => spec.build()?,
                    None => {
                        return Err(Error::Scenario(
                            "builder \"induced_free\" needs a \"base\" field".into(),
                        ))
                    }
                };
                Ok(GCwComplex::induced_free(&self.group()?, &base))
            }
            other => Err(Error::Scenario(format!("unknown builder {other:?}"))),
        }
    }
}

/// A complex without a group action: a named builder (`point`, `circle`,
/// `sphere` with `d`) or explicit cell data.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum PlainComplexSpec {
    Builder(PlainComplexBuilder),
    Explicit(PlainComplexDescriptor),
}

impl PlainComplexSpec {
    pub fn build(&self) -> Result<CwComplex> {
        match self {
            PlainComplexSpec::Builder(builder) => builder.build(),
            PlainComplexSpec::Explicit(descriptor) => descriptor.build(),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlainComplexBuilder {
    pub builder: String,
    #[serde(default)]
    pub d: Option<usize>,
}

impl PlainComplexBuilder {
    pub fn build(&self) -> Result<CwComplex> {
        match self.builder.as_str() {
            "point" => {
                if self.d.is_some() {
                    return Err(Error::Scenario("builder \"point\" does not take \"d\"".into()));
                }
                Ok(CwComplex::point())
            }
            "circle" => {
                if self.d.is_some() {
                    return Err(Error::Scenario(
                        "builder \"circle\" does not take \"d\"".into(),
                    ));
                }
                Ok(CwComplex::circle())
            }
            "sphere" => {
                let d = self.d.ok_or_else(|| {
                    Error::Scenario("builder \"sphere\" needs a \"d\" field".into())
                })?;
                Ok(CwComplex::sphere(d))
            }
            other => Err(Error::Scenario(format!("unknown plain builder {other:?}"))),
        }
    }
}

/// One node of a series scenario expression. `ref` nodes name entries of the
/// scenario's `defs` table, so decompositions can be written once and
/// reused; reference cycles are rejected.
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SeriesExprDescriptor {
    CompactNonsingular {
        complex: ComplexSpec,
    },
    Difference {
        whole: Box<SeriesExprDescriptor>,
        sub: Box<SeriesExprDescriptor>,
    },
    DisjointUnion {
        parts: Vec<SeriesExprDescriptor>,
    },
    AffineFactor {
        base: Box<SeriesExprDescriptor>,
        d: usize,
    },
    TrivialAction {
        complex: PlainComplexSpec,
    },
    FreeQuotient {
        complex: ComplexSpec,
    },
    Ref {
        name: String,
    },
}

impl SeriesExprDescriptor {
    pub fn build(&self, defs: &BTreeMap<String, SeriesExprDescriptor>) -> Result<SetExpr> {
        self.build_inner(defs, &mut Vec::new())
    }

    fn build_inner(
        &self,
        defs: &BTreeMap<String, SeriesExprDescriptor>,
        stack: &mut Vec<String>,
    ) -> Result<SetExpr> {
        match self {
            SeriesExprDescriptor::CompactNonsingular { complex } => {
                Ok(SetExpr::CompactNonsingular(complex.build()?))
            }
            SeriesExprDescriptor::Difference { whole, sub } => Ok(SetExpr::Difference(
                Box::new(whole.build_inner(defs, stack)?),
                Box::new(sub.build_inner(defs, stack)?),
            )),
            SeriesExprDescriptor::DisjointUnion { parts } => Ok(SetExpr::DisjointUnion(
                parts
                    .iter()
                    .map(|part| part.build_inner(defs, stack))
                    .collect::<Result<Vec<_>>>()?,
            )),
            SeriesExprDescriptor::AffineFactor { base, d } => Ok(SetExpr::AffineFactor(
                Box::new(base.build_inner(defs, stack)?),
                *d,
            )),
            SeriesExprDescriptor::TrivialAction { complex } => {
                Ok(SetExpr::TrivialAction(complex.build()?))
            }
            SeriesExprDescriptor::FreeQuotient { complex } => {
                Ok(SetExpr::FreeQuotient(complex.build()?))
            }
            SeriesExprDescriptor::Ref { name } => {
                if stack.iter().any(|seen| seen == name) {
                    return Err(Error::Scenario(format!(
                        "expression references form a cycle through {name:?}"
                    )));
                }
                let definition = defs.get(name).ok_or_else(|| {
                    Error::Scenario(format!("unknown expression name {name:?}"))
                })?;
                stack.push(name.clone());
                let built = definition.build_inner(defs, stack);
                stack.pop();
                built
            }
        }
    }
}

/// A linear action on rational d-space: per group element, a d-by-d matrix
/// of rationals written as strings (`"3"`, `"-1/2"`). Matrices are listed in
/// group element order.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionDescriptor {
    pub group: GroupDescriptor,
    pub dim: usize,
    pub matrices: Vec<Vec<Vec<String>>>,
}

impl ActionDescriptor {
    pub fn build(&self) -> Result<LinearAction> {
        let group = self.group.build()?;
        let mats = self
            .matrices
            .iter()
            .map(|matrix| {
                matrix
                    .iter()
                    .map(|row| row.iter().map(|text| parse_rational(text)).collect())
                    .collect()
            })
            .collect::<Result<Vec<Vec<Vec<BigRational>>>>>()?;
        LinearAction::new(group, self.dim, mats)
    }
}

/// Parse a list of rational-string points.
pub fn parse_points(points: &[Vec<String>]) -> Result<Vec<Vec<BigRational>>> {
    points
        .iter()
        .map(|point| point.iter().map(|text| parse_rational(text)).collect())
        .collect()
}

/// A scenario file: one command plus its inputs. Optional fields fall back
/// to command-line flags and then to defaults.
#[derive(Clone, Debug)]
pub enum ScenarioDescriptor {
    Homology(HomologyScenario),
    Spectral(SpectralScenario),
    Series(SeriesScenario),
    Quotient(QuotientScenario),
    GroupHomology(GroupHomologyScenario),
    Verify(VerifyScenario),
}

impl ScenarioDescriptor {
    /// Parse a scenario from JSON text. All shape problems (malformed JSON,
    /// missing or unknown command, unknown fields) surface as
    /// [`Error::Scenario`].
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)
            .map_err(|err| Error::Scenario(format!("malformed JSON: {err}")))?;
        let serde_json::Value::Object(mut map) = value else {
            return Err(Error::Scenario("scenario must be a JSON object".into()));
        };
        let command = match map.remove("command") {
            Some(serde_json::Value::String(command)) => command,
            Some(_) => {
                return Err(Error::Scenario("\"command\" must be a string".into()));
            }
            None => {
                return Err(Error::Scenario("scenario needs a \"command\" field".into()));
            }
        };
        let rest = serde_json::Value::Object(map);
        let shape = |err: serde_json::Error| {
            Error::Scenario(format!("invalid {command} scenario: {err}"))
        };
        match command.as_str() {
            "homology" => Ok(ScenarioDescriptor::Homology(
                serde_json::from_value(rest).map_err(shape)?,
            )),
            "spectral" => Ok(ScenarioDescriptor::Spectral(
                serde_json::from_value(rest).map_err(shape)?,
            )),
            "series" => Ok(ScenarioDescriptor::Series(
                serde_json::from_value(rest).map_err(shape)?,
            )),
            "quotient" => Ok(ScenarioDescriptor::Quotient(
                serde_json::from_value(rest).map_err(shape)?,
            )),
            "group-homology" => Ok(ScenarioDescriptor::GroupHomology(
                serde_json::from_value(rest).map_err(shape)?,
            )),
            "verify" => Ok(ScenarioDescriptor::Verify(
                serde_json::from_value(rest).map_err(shape)?,
            )),
            other => Err(Error::Scenario(format!("unknown command {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomologyScenario {
    pub complex: ComplexSpec,
    #[serde(default)]
    pub cutoff: Option<usize>,
    #[serde(default)]
    pub resolution: Option<ResolutionChoice>,
    #[serde(default)]
    pub format: Option<OutputFormat>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectralScenario {
    pub complex: ComplexSpec,
    #[serde(default)]
    pub cutoff: Option<usize>,
    #[serde(default)]
    pub resolution: Option<ResolutionChoice>,
    #[serde(default)]
    pub format: Option<OutputFormat>,
    /// Largest page index to print.
    #[serde(default)]
    pub pages: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesScenario {
    pub group: GroupDescriptor,
    pub expr: SeriesExprDescriptor,
    /// Named sub-expressions usable from `ref` nodes.
    #[serde(default)]
    pub defs: BTreeMap<String, SeriesExprDescriptor>,
    #[serde(default)]
    pub cutoff: Option<usize>,
    #[serde(default)]
    pub resolution: Option<ResolutionChoice>,
    #[serde(default)]
    pub format: Option<OutputFormat>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuotientScenario {
    pub action: ActionDescriptor,
    /// Weighted degree bound for the relation search; defaults to twice the
    /// largest generator degree.
    #[serde(default)]
    pub relations_degree: Option<u32>,
    /// Sample points for the orbit-separation check.
    #[serde(default)]
    pub samples: Vec<Vec<String>>,
    /// Points at which to report the exact Jacobian rank.
    #[serde(default)]
    pub jacobian_at: Vec<Vec<String>>,
    #[serde(default)]
    pub format: Option<OutputFormat>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupHomologyScenario {
    pub group: GroupDescriptor,
    #[serde(default)]
    pub cutoff: Option<usize>,
    #[serde(default)]
    pub format: Option<OutputFormat>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyScenario {
    pub complex: ComplexSpec,
    /// Length to which the verifying resolution is built.
    #[serde(default)]
    pub cutoff: Option<usize>,
    #[serde(default)]
    pub resolution: Option<ResolutionChoice>,
    #[serde(default)]
    pub format: Option<OutputFormat>,
}

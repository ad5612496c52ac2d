use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::{
    parse_polynomial, rat, BiDegree, ExponentVector, Orientation, Rational, Reductions, Ring,
    SeriesContext, ValuationBackend,
};
use crate::degeneration::{build_family, build_projection, FamilyPresentation, RelationSet, WeightFunctional};
use crate::okounkov::{
    default_slice_bound, okounkov_body, slice, Generator, GradingHomomorphism, OkounkovBody,
    SagbiDatum, SliceResult, ValueSemigroup,
};
use crate::{Error, Result};

use super::format::{EntryFile, FlowDefaults, OrientationFile, ValuationFile};
use super::representation::Representation;

/// A verified example bundle.
///
/// Every derived object is recomputed from the raw data; the `expected`
/// fields of the file are only compared against, never used.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    file: EntryFile,
    datum: SagbiDatum,
    relations: RelationSet,
    semigroup: ValueSemigroup,
    body: OkounkovBody,
    projection: WeightFunctional,
    family: FamilyPresentation,
    homomorphism: Option<GradingHomomorphism>,
    slice: Option<SliceResult>,
    representation: Option<Representation>,
}

/// Levels checked against the Weyl dimension formula on load.
pub const REPRESENTATION_LEVELS: u64 = 4;

fn rational_pair(p: &[i64; 2]) -> Result<Rational> {
    if p[1] == 0 {
        return Err(Error::InvalidDatum("zero denominator".into()));
    }
    Ok(rat(p[0], p[1]))
}

fn bidegree_list(rows: &[Vec<i64>]) -> Result<Vec<BiDegree>> {
    rows.iter()
        .map(|r| {
            let (&k, u) = r
                .split_first()
                .ok_or_else(|| Error::InvalidDatum("empty semigroup element".into()))?;
            if k < 1 {
                return Err(Error::InvalidDatum("semigroup levels must be ≥ 1".into()));
            }
            Ok(BiDegree::new(k as u64, u.to_vec()))
        })
        .collect()
}

fn vertex_list(rows: &[Vec<[i64; 2]>]) -> Result<Vec<Vec<Rational>>> {
    let mut v: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| r.iter().map(rational_pair).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    v.sort();
    Ok(v)
}

fn show_vertices(v: &[Vec<Rational>]) -> String {
    let parts: Vec<String> = v
        .iter()
        .map(|p| {
            let c: Vec<String> = p.iter().map(|x| format!("{x}")).collect();
            format!("({})", c.join(","))
        })
        .collect();
    format!("{{{}}}", parts.join(", "))
}

fn show_bidegrees(v: &[BiDegree]) -> String {
    let parts: Vec<String> = v.iter().map(|b| format!("{b}")).collect();
    format!("{{{}}}", parts.join(", "))
}

impl CatalogEntry {
    /// Parses and verifies an entry from its JSON text.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: EntryFile = serde_json::from_str(text).map_err(|e| Error::Parse {
            pos: e.column(),
            msg: format!("entry file line {}: {e}", e.line()),
        })?;
        Self::from_file(file)
    }

    pub fn from_file(file: EntryFile) -> Result<Self> {
        let ring = Ring::with_flag(&file.ring, file.laurent);
        let reductions = Reductions::new(
            file.reductions
                .iter()
                .map(|r| {
                    Reductions::rule(
                        &parse_polynomial(&ring, &r.lead)?,
                        &parse_polynomial(&ring, &r.tail)?,
                    )
                })
                .collect::<Result<Vec<_>>>()?,
        )?;
        let backend = match &file.valuation {
            ValuationFile::Monomial { orientation } => ValuationBackend::Monomial(match orientation {
                OrientationFile::Min => Orientation::Min,
                OrientationFile::Max => Orientation::Max,
            }),
            ValuationFile::Series {
                parameter,
                branches,
                images,
                order,
                cap,
            } => {
                let br: Vec<(&str, &str)> =
                    branches.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
                let im: Vec<&str> = images.iter().map(String::as_str).collect();
                ValuationBackend::Series(SeriesContext::new(&ring, parameter, &br, &im, *order, *cap)?)
            }
        };
        let generators = file
            .generators
            .iter()
            .map(|g| {
                Ok(Generator {
                    level: g.level,
                    rep: parse_polynomial(&ring, &g.rep)?,
                    value: ExponentVector(g.value.clone()),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let datum = SagbiDatum::new(ring, backend, reductions, generators, file.section)?;
        let relations = file
            .relations
            .iter()
            .map(|g| parse_polynomial(datum.symbols(), g))
            .collect::<Result<Vec<_>>>()?;
        let relations = RelationSet::new(&datum, relations)?;
        let semigroup = datum.semigroup();
        let body = okounkov_body(&semigroup)?;
        let projection = build_projection(&relations)?;
        let family = build_family(&relations, &projection)?;
        let homomorphism = file
            .homomorphism
            .as_ref()
            .map(|m| GradingHomomorphism::new(m.clone(), datum.rank() + 1))
            .transpose()?;
        let slice = homomorphism
            .as_ref()
            .map(|h| slice(&semigroup, &body, h, default_slice_bound(&semigroup)))
            .transpose()?;
        let representation = file.representation.as_ref().map(|r| Representation {
            highest_weight: r.highest_weight.clone(),
            matrix: r.pattern_matrix.clone(),
            offset: r.pattern_offset.clone(),
        });
        let entry = CatalogEntry {
            file,
            datum,
            relations,
            semigroup,
            body,
            projection,
            family,
            homomorphism,
            slice,
            representation,
        };
        entry.verify()?;
        Ok(entry)
    }

    /// Compares every expected field with its recomputed value.
    fn verify(&self) -> Result<()> {
        let mut diff: Vec<String> = Vec::new();
        let exp = &self.file.expected;

        let mut want = bidegree_list(&exp.semigroup)?;
        want.sort();
        let got = self.semigroup.canonical_generators();
        if want != got {
            diff.push(format!(
                "semigroup: expected {}, computed {}",
                show_bidegrees(&want),
                show_bidegrees(&got)
            ));
        }
        if !self.semigroup.generates_full_lattice() {
            diff.push(format!(
                "semigroup: generated group has index {:?} in the full lattice",
                self.semigroup.lattice_index()
            ));
        }
        let want = vertex_list(&exp.vertices)?;
        if want != self.body.vertices() {
            diff.push(format!(
                "vertices: expected {}, computed {}",
                show_vertices(&want),
                show_vertices(self.body.vertices())
            ));
        }
        let want = rational_pair(&exp.degree)?;
        if want != self.degree() {
            diff.push(format!("degree: expected {want}, computed {}", self.degree()));
        }
        match (&exp.slice, &self.slice) {
            (Some(es), Some(s)) => {
                let mut want = bidegree_list(&es.semigroup)?;
                want.sort();
                let got = s.semigroup.canonical_generators();
                if want != got {
                    diff.push(format!(
                        "slice semigroup: expected {}, computed {}",
                        show_bidegrees(&want),
                        show_bidegrees(&got)
                    ));
                }
                let want = vertex_list(&es.vertices)?;
                if want != s.body.vertices() {
                    diff.push(format!(
                        "slice vertices: expected {}, computed {}",
                        show_vertices(&want),
                        show_vertices(s.body.vertices())
                    ));
                }
                if !s.complete {
                    diff.push("slice semigroup: enumeration bound may be too small".into());
                }
            }
            (None, None) => {}
            (Some(_), None) => diff.push("slice expected but no homomorphism given".into()),
            (None, Some(_)) => diff.push("homomorphism given without expected slice".into()),
        }
        if let Some(r) = &self.representation {
            if let Err(e) = r.verify(&self.body, REPRESENTATION_LEVELS) {
                diff.push(format!("representation: {e}"));
            }
        }
        if diff.is_empty() {
            Ok(())
        } else {
            Err(Error::Verification(format!(
                "entry `{}`:\n  {}",
                self.file.name,
                diff.join("\n  ")
            )))
        }
    }

    pub fn name(&self) -> &str {
        &self.file.name
    }

    pub fn description(&self) -> &str {
        &self.file.description
    }

    pub fn file(&self) -> &EntryFile {
        &self.file
    }

    pub fn datum(&self) -> &SagbiDatum {
        &self.datum
    }

    pub fn relations(&self) -> &RelationSet {
        &self.relations
    }

    pub fn semigroup(&self) -> &ValueSemigroup {
        &self.semigroup
    }

    pub fn body(&self) -> &OkounkovBody {
        &self.body
    }

    pub fn projection(&self) -> &WeightFunctional {
        &self.projection
    }

    pub fn family(&self) -> &FamilyPresentation {
        &self.family
    }

    pub fn homomorphism(&self) -> Option<&GradingHomomorphism> {
        self.homomorphism.as_ref()
    }

    pub fn slice(&self) -> Option<&SliceResult> {
        self.slice.as_ref()
    }

    pub fn representation(&self) -> Option<&Representation> {
        self.representation.as_ref()
    }

    pub fn flow_defaults(&self) -> &FlowDefaults {
        &self.file.flow
    }

    /// `n! · Vol(Δ)`.
    pub fn degree(&self) -> Rational {
        let n = self.body.dim() as i64;
        let fact: i64 = (1..=n).product();
        self.body.volume() * rat(fact, 1)
    }
}

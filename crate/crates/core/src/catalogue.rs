//! The bundled reference catalogue and comparison of computed results against it.
//!
//! Reference format: `{"solutions": [entry, ...]}` with one entry per line,
//! each entry `{"id", "item", "r": [r1, r2, r3], "sigma1", "sigma2",
//! "im_delta2", "ker_delta3"}`. The two matrix fields list printed columns
//! of `im delta^2` and `ker delta^3`, are `null` for entries without printed
//! matrices, and `im_delta2: []` stands for the zero image.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cohomology::CohomologyReport;
use crate::error::{Error, Result};
use crate::intlinalg::{AbelianGroup, Lattice};
use crate::rmap::{RMap, Symmetry};
use crate::search::{canonical_key, SolutionSet};

pub const REFERENCE_SIZE: usize = 406;

const BUNDLED: &str = include_str!("../data/reference.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogueEntry {
    pub id: u32,
    pub item: u32,
    pub r: [String; 3],
    pub sigma1: u32,
    pub sigma2: u32,
    pub im_delta2: Option<Vec<[i64; 8]>>,
    pub ker_delta3: Option<Vec<[i64; 8]>>,
}

impl CatalogueEntry {
    pub fn rmap(&self) -> Result<RMap> {
        RMap::from_polys(&self.r).map_err(|e| Error::ReferenceInvariant { id: self.id, msg: e.to_string() })
    }

    pub fn has_printed_matrices(&self) -> bool {
        self.ker_delta3.is_some()
    }

    pub fn sigma(&self, s: Symmetry) -> u32 {
        match s {
            Symmetry::Sigma1 => self.sigma1,
            Symmetry::Sigma2 => self.sigma2,
        }
    }

    pub fn printed_im(&self) -> Result<Option<Lattice>> {
        printed_lattice(&self.im_delta2)
    }

    pub fn printed_ker(&self) -> Result<Option<Lattice>> {
        printed_lattice(&self.ker_delta3)
    }
}

fn printed_lattice(cols: &Option<Vec<[i64; 8]>>) -> Result<Option<Lattice>> {
    cols.as_ref().map(|c| Ok(Lattice::from_vectors(8, c)?)).transpose()
}

#[derive(Serialize, Deserialize)]
struct ReferenceFile<T> {
    solutions: Vec<T>,
}

/// Catalogue entries in file order, with lookups by id and by code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reference {
    entries: Vec<CatalogueEntry>,
    by_id: BTreeMap<u32, usize>,
    by_code: HashMap<u32, usize>,
}

impl Reference {
    /// Wraps entries without checking any invariant beyond parsable polynomials.
    pub fn from_entries(entries: Vec<CatalogueEntry>) -> Result<Self> {
        let mut by_id = BTreeMap::new();
        let mut by_code = HashMap::new();
        for (i, e) in entries.iter().enumerate() {
            if by_id.insert(e.id, i).is_some() {
                return Err(Error::ReferenceInvariant { id: e.id, msg: "duplicate id".into() });
            }
            if let Some(prev) = by_code.insert(e.rmap()?.code(), i) {
                return Err(Error::ReferenceInvariant { id: e.id, msg: format!("same map as R_{}", entries[prev].id) });
            }
        }
        Ok(Reference { entries, by_id, by_code })
    }

    pub fn entries(&self) -> &[CatalogueEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, id: u32) -> Option<&CatalogueEntry> {
        self.by_id.get(&id).map(|&i| &self.entries[i])
    }

    pub fn by_code(&self, code: u32) -> Option<&CatalogueEntry> {
        self.by_code.get(&code).map(|&i| &self.entries[i])
    }

    pub fn codes(&self) -> BTreeSet<u32> {
        self.by_code.keys().copied().collect()
    }

    /// The map of entry `id`; panics on unknown ids.
    pub fn rmap(&self, id: u32) -> RMap {
        self.get(id).and_then(|e| e.rmap().ok()).unwrap_or_else(|| panic!("no reference entry R_{id}"))
    }

    /// Image-cardinality histogram with keys 1..=8.
    pub fn histogram(&self) -> BTreeMap<u32, usize> {
        let mut h: BTreeMap<u32, usize> = (1..=8).map(|c| (c, 0)).collect();
        for e in &self.entries {
            if let Ok(r) = e.rmap() {
                *h.entry(r.image_cardinality()).or_default() += 1;
            }
        }
        h
    }

    /// Ids grouped by catalogue item.
    pub fn items(&self) -> BTreeMap<u32, Vec<u32>> {
        let mut items: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for e in &self.entries {
            items.entry(e.item).or_default().push(e.id);
        }
        items
    }

    /// Checks every invariant of a well-formed catalogue:
    /// ids `1..=406`, maps solve the equation, sigma ids are involutive and
    /// agree with conjugation of the maps, items are exactly the sigma
    /// orbits, and printed matrices come in complete pairs.
    pub fn validate(&self) -> Result<()> {
        if self.len() != REFERENCE_SIZE {
            return Err(Error::ReferenceInvariant {
                id: 0,
                msg: format!("expected {REFERENCE_SIZE} entries, found {}", self.len()),
            });
        }
        for e in &self.entries {
            let fail = |msg: String| Error::ReferenceInvariant { id: e.id, msg };
            if !(1..=REFERENCE_SIZE as u32).contains(&e.id) {
                return Err(fail("id out of range".into()));
            }
            let r = e.rmap()?;
            if !r.satisfies_stte() {
                return Err(fail(format!("{r} does not satisfy the tetrahedron equation")));
            }
            for s in Symmetry::ALL {
                let partner =
                    self.get(e.sigma(s)).ok_or_else(|| fail(format!("{s} partner R_{} missing", e.sigma(s))))?;
                if partner.sigma(s) != e.id {
                    return Err(fail(format!("{s} partner R_{} does not point back", partner.id)));
                }
                if partner.rmap()? != r.conjugate(s) {
                    return Err(fail(format!("{s} partner R_{} is not the {s}-conjugate", partner.id)));
                }
            }
            if e.im_delta2.is_some() != e.ker_delta3.is_some() {
                return Err(fail("printed im and ker must both be present or both absent".into()));
            }
        }
        for (item, ids) in self.items() {
            let e = self.get(ids[0]).expect("indexed");
            let mut orbit = vec![e.id, e.sigma1, e.sigma2, self.get(e.sigma1).expect("checked").sigma2];
            orbit.sort();
            orbit.dedup();
            let mut ids = ids.clone();
            ids.sort();
            if orbit != ids || ![1, 2, 4].contains(&ids.len()) {
                return Err(Error::ReferenceInvariant {
                    id: e.id,
                    msg: format!("item {item} lists {ids:?} but the sigma orbit is {orbit:?}"),
                });
            }
        }
        Ok(())
    }

    /// One entry per line, ids in file order.
    pub fn write_json<W: Write>(&self, w: &mut W) -> Result<()> {
        write_solutions(w, &self.entries)
    }
}

fn write_solutions<W: Write, T: Serialize>(w: &mut W, items: &[T]) -> Result<()> {
    writeln!(w, "{{\n  \"solutions\": [")?;
    for (i, item) in items.iter().enumerate() {
        let sep = if i + 1 < items.len() { "," } else { "" };
        writeln!(w, "    {}{sep}", serde_json::to_string(item)?)?;
    }
    writeln!(w, "  ]\n}}")?;
    Ok(())
}

/// Parses a catalogue without validating it.
pub fn parse_reference(text: &str) -> Result<Reference> {
    let file: ReferenceFile<CatalogueEntry> =
        serde_json::from_str(text).map_err(|e| Error::ReferenceParse { line: e.line(), msg: e.to_string() })?;
    Reference::from_entries(file.solutions)
}

/// Reads and validates a catalogue file.
pub fn load_reference(path: impl AsRef<Path>) -> Result<Reference> {
    let text = std::fs::read_to_string(path)?;
    let reference = parse_reference(&text)?;
    reference.validate()?;
    Ok(reference)
}

/// The catalogue shipped with the crate, validated.
pub fn bundled_reference() -> Result<Reference> {
    let reference = parse_reference(BUNDLED)?;
    reference.validate()?;
    Ok(reference)
}

/// Differences between a computed run and a reference; empty means agreement.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DiffReport {
    /// Codes in the reference but not computed.
    pub missing: Vec<u32>,
    /// Codes computed but absent from the reference.
    pub extra: Vec<u32>,
    /// Reference ids whose printed lattices differ from the computed ones.
    pub mismatched_cohomology: Vec<u32>,
    /// Reference ids whose sigma partner ids disagree with conjugation.
    pub sigma_mismatches: Vec<u32>,
    /// Reference ids where "has printed matrices" differs from computed nontriviality.
    pub nontrivial_mismatches: Vec<u32>,
    /// Ids with no cohomology report to compare against.
    pub unreported: Vec<u32>,
    pub compared: usize,
    pub printed_compared: usize,
}

impl DiffReport {
    pub fn is_empty(&self) -> bool {
        self.missing.is_empty()
            && self.extra.is_empty()
            && self.mismatched_cohomology.is_empty()
            && self.sigma_mismatches.is_empty()
            && self.nontrivial_mismatches.is_empty()
            && self.unreported.is_empty()
    }

    pub fn summary(&self) -> String {
        format!(
            "compared {} entries ({} with printed matrices): {} missing, {} extra, {} cohomology mismatches, {} sigma mismatches, {} nontriviality mismatches, {} unreported",
            self.compared,
            self.printed_compared,
            self.missing.len(),
            self.extra.len(),
            self.mismatched_cohomology.len(),
            self.sigma_mismatches.len(),
            self.nontrivial_mismatches.len(),
            self.unreported.len()
        )
    }
}

/// Compares by 24-bit code, then checks sigma partners, nontriviality and
/// (for entries with printed matrices) equality of the kernel and image lattices.
pub fn compare(computed: &SolutionSet, reports: &[CohomologyReport], reference: &Reference) -> Result<DiffReport> {
    let computed_codes: BTreeSet<u32> = computed.codes().collect();
    let reference_codes = reference.codes();
    let reports: HashMap<u32, &CohomologyReport> = reports.iter().map(|r| (r.code, r)).collect();
    let mut diff = DiffReport {
        missing: reference_codes.difference(&computed_codes).copied().collect(),
        extra: computed_codes.difference(&reference_codes).copied().collect(),
        ..DiffReport::default()
    };
    for e in reference.entries() {
        let r = e.rmap()?;
        if !computed_codes.contains(&r.code()) {
            continue;
        }
        diff.compared += 1;
        let sigma_ok = Symmetry::ALL
            .into_iter()
            .all(|s| reference.get(e.sigma(s)).and_then(|p| p.rmap().ok()).is_some_and(|p| p == r.conjugate(s)));
        if !sigma_ok {
            diff.sigma_mismatches.push(e.id);
        }
        let Some(rep) = reports.get(&r.code()) else {
            diff.unreported.push(e.id);
            continue;
        };
        if rep.nontrivial != e.has_printed_matrices() {
            diff.nontrivial_mismatches.push(e.id);
        }
        if let (Some(ker), Some(im)) = (e.printed_ker()?, e.printed_im()?) {
            diff.printed_compared += 1;
            if ker != rep.ker || im != rep.im {
                diff.mismatched_cohomology.push(e.id);
            }
        }
    }
    Ok(diff)
}

/// One computed solution, joined with its reference entry when there is one.
///
/// `im_delta2` / `ker_delta3` hold the computed canonical bases for
/// nontrivial solutions and are `null` otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub id: Option<u32>,
    pub item: Option<u32>,
    pub r: [String; 3],
    pub sigma1: Option<u32>,
    pub sigma2: Option<u32>,
    pub im_delta2: Option<Vec<[i64; 8]>>,
    pub ker_delta3: Option<Vec<[i64; 8]>>,
    pub code: u32,
    pub image_cardinality: u32,
    pub bijective: bool,
    pub ker_rank: usize,
    pub h3: AbelianGroup,
    pub h3_reduced: AbelianGroup,
    pub nontrivial: bool,
}

fn basis8(l: &Lattice) -> Vec<[i64; 8]> {
    l.basis_vectors().into_iter().map(|v| v.try_into().expect("lattice in Z^8")).collect()
}

/// Records ordered by reference id, then unreferenced solutions in canonical order.
pub fn build_records(reports: &[CohomologyReport], reference: Option<&Reference>) -> Vec<SolutionRecord> {
    let mut records: Vec<SolutionRecord> = reports
        .iter()
        .map(|rep| {
            let r = RMap::from_code(rep.code);
            let entry = reference.and_then(|re| re.by_code(rep.code));
            SolutionRecord {
                id: entry.map(|e| e.id),
                item: entry.map(|e| e.item),
                r: r.polys(),
                sigma1: entry.map(|e| e.sigma1),
                sigma2: entry.map(|e| e.sigma2),
                im_delta2: rep.nontrivial.then(|| basis8(&rep.im)),
                ker_delta3: rep.nontrivial.then(|| basis8(&rep.ker)),
                code: rep.code,
                image_cardinality: r.image_cardinality(),
                bijective: r.is_bijective(),
                ker_rank: rep.ker_rank,
                h3: rep.h3.clone(),
                h3_reduced: rep.h3_reduced.clone(),
                nontrivial: rep.nontrivial,
            }
        })
        .collect();
    records.sort_by_key(|rec| (rec.id.is_none(), rec.id, canonical_key(RMap::from_code(rec.code))));
    records
}

pub fn emit_json<W: Write>(w: &mut W, records: &[SolutionRecord]) -> Result<()> {
    write_solutions(w, records)
}

pub fn parse_records(text: &str) -> Result<Vec<SolutionRecord>> {
    let file: ReferenceFile<SolutionRecord> =
        serde_json::from_str(text).map_err(|e| Error::ReferenceParse { line: e.line(), msg: e.to_string() })?;
    Ok(file.solutions)
}

pub fn emit_text<W: Write>(w: &mut W, records: &[SolutionRecord]) -> Result<()> {
    writeln!(w, "# id item code map |Im| bijective ker_rank H3 H3_reduced nontrivial")?;
    for rec in records {
        let opt = |v: Option<u32>| v.map_or("-".to_string(), |x| x.to_string());
        writeln!(
            w,
            "{}\t{}\t{:#08x}\t({}, {}, {})\t{}\t{}\t{}\t{}\t{}\t{}",
            rec.id.map_or("-".to_string(), |i| format!("R_{i}")),
            opt(rec.item),
            rec.code,
            rec.r[0],
            rec.r[1],
            rec.r[2],
            rec.image_cardinality,
            if rec.bijective { "yes" } else { "no" },
            rec.ker_rank,
            rec.h3,
            rec.h3_reduced,
            if rec.nontrivial { "yes" } else { "no" },
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_reference_is_valid() {
        let re = bundled_reference().unwrap();
        assert_eq!(re.len(), 406);
        let e = re.get(37).unwrap();
        assert_eq!(e.r, ["0", "x+z", "0"].map(String::from));
        assert_eq!(e.sigma2, 38);
        assert_eq!(e.im_delta2.as_ref().unwrap().len(), 1);
        assert_eq!(re.histogram().values().sum::<usize>(), 406);
    }

    #[test]
    fn truncated_file_reports_line() {
        let cut = &BUNDLED[..BUNDLED.len() / 2];
        match parse_reference(cut) {
            Err(Error::ReferenceParse { line, .. }) => assert!(line > 1),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn round_trip_is_identity() {
        let re = bundled_reference().unwrap();
        let mut buf = Vec::new();
        re.write_json(&mut buf).unwrap();
        let again = parse_reference(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!(again, re);
    }

    #[test]
    fn broken_sigma_link_is_caught() {
        let re = bundled_reference().unwrap();
        let mut entries = re.entries().to_vec();
        entries[0].sigma2 = 1;
        let err = Reference::from_entries(entries).unwrap().validate().unwrap_err();
        assert!(matches!(err, Error::ReferenceInvariant { .. }));
    }
}

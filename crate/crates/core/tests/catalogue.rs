use tetra_core::catalogue::{build_records, emit_json, emit_text, parse_records, parse_reference, Reference};
use tetra_core::cohomology::cohomology_all;
use tetra_core::{bundled_reference, compare, enumerate_solutions, load_reference, Error, Exec, RMap};

const PATH: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data/reference.json");

#[test]
fn file_and_bundled_copies_agree() {
    assert_eq!(load_reference(PATH).unwrap(), bundled_reference().unwrap());
}

#[test]
fn reference_structure() {
    let re = bundled_reference().unwrap();
    assert_eq!(re.rmap(1).sigma2(), re.rmap(2));
    assert_eq!(re.rmap(3).sigma1(), re.rmap(4));
    assert_eq!(re.rmap(387).sigma1(), re.rmap(388));
    assert_eq!(re.rmap(381), RMap::IDENTITY);
    let sizes: Vec<usize> = re.items().values().map(Vec::len).collect();
    assert!(sizes.iter().all(|s| [1, 2, 4].contains(s)));
    assert_eq!(sizes.iter().sum::<usize>(), 406);
    assert_eq!(re.get(1).unwrap().rmap().unwrap().image_cardinality(), 1);
    // The nontrivial count is whatever the file says; here it is only checked for consistency.
    let printed = re.entries().iter().filter(|e| e.has_printed_matrices()).count();
    assert!(printed > 0 && printed < 406);
}

#[test]
fn missing_file_is_an_io_error() {
    assert!(matches!(load_reference("/nonexistent/reference.json"), Err(Error::Io(_))));
}

fn computed() -> (tetra_core::SolutionSet, Vec<tetra_core::CohomologyReport>) {
    let set = enumerate_solutions();
    let reports = cohomology_all(set.as_slice(), Exec::default()).unwrap();
    (set, reports)
}

#[test]
fn full_comparison_is_clean() {
    let (set, reports) = computed();
    let diff = compare(&set, &reports, &bundled_reference().unwrap()).unwrap();
    assert!(diff.is_empty(), "{}", diff.summary());
    assert_eq!(diff.compared, 406);
}

#[test]
fn perturbed_polynomial_shows_up_as_missing_and_extra() {
    let (set, reports) = computed();
    let re = bundled_reference().unwrap();
    let mut entries = re.entries().to_vec();
    let e37 = entries.iter_mut().find(|e| e.id == 37).unwrap();
    let original = e37.rmap().unwrap().code();
    e37.r[0] = "1".into();
    let perturbed = e37.rmap().unwrap();
    assert!(!perturbed.satisfies_stte());
    let broken = Reference::from_entries(entries).unwrap();
    assert!(broken.validate().is_err());
    let diff = compare(&set, &reports, &broken).unwrap();
    assert_eq!(diff.missing, vec![perturbed.code()]);
    assert_eq!(diff.extra, vec![original]);
}

#[test]
fn sign_flipped_printed_column_still_matches() {
    let (set, reports) = computed();
    let re = bundled_reference().unwrap();
    let mut entries = re.entries().to_vec();
    let e37 = entries.iter_mut().find(|e| e.id == 37).unwrap();
    for col in e37.im_delta2.as_mut().unwrap() {
        *col = col.map(|x| -x);
    }
    for col in e37.ker_delta3.as_mut().unwrap() {
        *col = col.map(|x| -x);
    }
    let flipped = Reference::from_entries(entries).unwrap();
    flipped.validate().unwrap();
    assert!(compare(&set, &reports, &flipped).unwrap().is_empty());
}

#[test]
fn wrong_printed_kernel_is_reported() {
    let (set, reports) = computed();
    let re = bundled_reference().unwrap();
    let mut entries = re.entries().to_vec();
    let e39 = entries.iter_mut().find(|e| e.id == 39).unwrap();
    e39.ker_delta3.as_mut().unwrap()[0][0] += 1;
    let diff = compare(&set, &reports, &Reference::from_entries(entries).unwrap()).unwrap();
    assert_eq!(diff.mismatched_cohomology, vec![39]);
}

#[test]
fn reference_round_trip() {
    let re = bundled_reference().unwrap();
    let mut buf = Vec::new();
    re.write_json(&mut buf).unwrap();
    let again = parse_reference(std::str::from_utf8(&buf).unwrap()).unwrap();
    again.validate().unwrap();
    assert_eq!(again, re);
    let mut buf2 = Vec::new();
    again.write_json(&mut buf2).unwrap();
    assert_eq!(buf, buf2);
}

#[test]
fn emitted_records_are_deterministic_and_reload() {
    let (_, reports) = computed();
    let re = bundled_reference().unwrap();
    let records = build_records(&reports, Some(&re));
    let mut a = Vec::new();
    emit_json(&mut a, &records).unwrap();
    let (_, reports2) = computed();
    let mut b = Vec::new();
    emit_json(&mut b, &build_records(&reports2, Some(&re))).unwrap();
    assert_eq!(a, b);

    let back = parse_records(std::str::from_utf8(&a).unwrap()).unwrap();
    assert_eq!(back, records);
    assert_eq!(back.len(), 406);
    let ids: Vec<u32> = back.iter().map(|r| r.id.unwrap()).collect();
    assert_eq!(ids, (1..=406).collect::<Vec<_>>());
    let identity = back.iter().find(|r| r.code == RMap::IDENTITY.code()).unwrap();
    assert_eq!(identity.image_cardinality, 8);
    assert!(identity.bijective);
    assert_eq!(back[0].image_cardinality, 1);

    // Output records carry computed fields, so they are not a catalogue file.
    let as_reference = parse_reference(std::str::from_utf8(&a).unwrap());
    assert!(matches!(as_reference, Err(Error::ReferenceParse { .. })), "extra fields are rejected");

    let mut text = Vec::new();
    emit_text(&mut text, &records).unwrap();
    assert_eq!(String::from_utf8(text).unwrap().lines().count(), 407);
}

#[test]
fn records_without_reference_have_null_ids() {
    let (_, reports) = computed();
    let records = build_records(&reports[..3], None);
    assert!(records.iter().all(|r| r.id.is_none() && r.sigma1.is_none()));
}

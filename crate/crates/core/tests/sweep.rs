use triproj::family::family_lut;
use triproj::search::{sweep, write_csv, SweepSpec, VerifyLevel};
use triproj::vectfun::{walsh_spectrum, WalshReport};
use triproj::{FamilyParams, Felt, FieldCtx};

fn spec(m: u32, poly: Option<u32>, level: VerifyLevel, workers: usize) -> SweepSpec {
    let mut s = SweepSpec::new(FieldCtx::new(m, poly).unwrap(), 1, level);
    s.workers = workers;
    s
}

#[test]
fn worker_count_does_not_change_output() {
    let one = sweep(&spec(3, None, VerifyLevel::FullDdt, 1)).unwrap();
    let three = sweep(&spec(3, None, VerifyLevel::FullDdt, 3)).unwrap();
    assert_eq!(one.rows, three.rows);
    assert_eq!(one.summary, three.summary);
    let mut a = Vec::new();
    let mut b = Vec::new();
    write_csv(&one.rows, &mut a).unwrap();
    write_csv(&three.rows, &mut b).unwrap();
    assert_eq!(a, b);
}

#[test]
fn passing_count_is_basis_independent() {
    // x^3+x+1 and x^3+x^2+1 give isomorphic fields
    let a = sweep(&spec(3, Some(0b1011), VerifyLevel::Projective, 0)).unwrap();
    let b = sweep(&spec(3, Some(0b1101), VerifyLevel::Projective, 0)).unwrap();
    assert_eq!(a.summary.condition_pass, b.summary.condition_pass);
    assert_eq!(
        a.summary.projective_bijective,
        b.summary.projective_bijective
    );
    assert_eq!(a.summary.violations + b.summary.violations, 0);
    assert_eq!(a.summary.reduction, "0b1011");
    assert_eq!(b.summary.reduction, "0b1101");
}

#[test]
fn limit_and_level_contract() {
    let mut s = spec(3, None, VerifyLevel::ConditionOnly, 0);
    s.limit = Some(100);
    let out = sweep(&s).unwrap();
    assert_eq!(out.rows.len(), 100);
    assert!(out
        .rows
        .iter()
        .all(|r| r.projective.is_none() && r.du.is_none()));
    // canonical order: a-major, then b, then c
    assert_eq!(
        (out.rows[0].a, out.rows[0].b, out.rows[0].c),
        (Felt(1), Felt(0), Felt(0))
    );
    assert_eq!(
        (out.rows[64].a, out.rows[64].b, out.rows[64].c),
        (Felt(2), Felt(0), Felt(0))
    );
}

#[test]
fn csv_layout() {
    let mut s = spec(2, None, VerifyLevel::FullDdt, 0);
    s.limit = Some(3);
    let out = sweep(&s).unwrap();
    let mut buf = Vec::new();
    write_csv(&out.rows, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "a,b,c,condition_pass,projective,du,image_class");
    assert_eq!(lines.len(), 4);
    for l in &lines[1..] {
        assert_eq!(l.split(',').count(), 7);
    }
}

// Recorded Walsh spectrum of the m=3, k=1, (1,1,0) member; guards against
// silent changes in packing or the transform.
#[test]
fn walsh_snapshot_m3() {
    let f = FieldCtx::with_degree(3).unwrap();
    let p = FamilyParams::new(f, 1, Felt(1), Felt(1), Felt(0)).unwrap();
    let lut = family_lut(&p).unwrap();
    let rep: WalshReport = walsh_spectrum(&lut, None).unwrap();
    assert_eq!(rep.masks.len(), 511);
    let combined = rep.combined();
    let snapshot: Vec<(i64, u64)> = combined.into_iter().collect();
    assert_eq!(snapshot, SNAPSHOT);
}

const SNAPSHOT: &[(i64, u64)] = &[(-32, 61320), (0, 130816), (32, 69496)];

use reinhardt::asymptotics::{generate_path, sweep, write_csv, Construction, PathKind, PathSpec, SweepConfig};
use reinhardt::catalog;

fn config(constructions: Vec<Construction>) -> SweepConfig {
    SweepConfig { z0: vec![0.5, 0.5], zeta0: vec![1.0, 1.0], constructions, monomial: None, disc: None }
}

fn path() -> Vec<reinhardt::asymptotics::PathPoint> {
    let p = PathSpec::new(PathKind::Cone { angle: 0.3 }, vec![1.0, 1.0]).with_schedule(0.2, 0.5, 10);
    generate_path(&catalog::product_one(), &p).unwrap().points
}

#[test]
fn sweeps_are_deterministic_and_ordered() {
    let spec = catalog::product_one();
    let pts = path();
    let cfg = config(vec![Construction::Parallelepiped, Construction::Interval, Construction::Monomial]);
    let a = sweep(&spec, &pts, &cfg).unwrap();
    let b = sweep(&spec, &pts, &cfg).unwrap();
    assert_eq!(a, b);
    assert!(a.windows(2).all(|w| w[1].t < w[0].t));
    for row in &a {
        assert!(row.flags.is_empty(), "{:?}", row.flags);
        let lower = row.bounds[&Construction::Monomial];
        for c in [Construction::Parallelepiped, Construction::Interval] {
            assert!(row.bounds[&c] >= lower - 1e-9);
        }
    }
}

#[test]
fn empty_construction_set() {
    let rows = sweep(&catalog::product_one(), &path(), &config(vec![])).unwrap();
    assert!(rows.iter().all(|r| r.bounds.is_empty() && r.flags.is_empty() && r.d > 0.0));
}

#[test]
fn csv_layout() {
    let rows = sweep(&catalog::product_one(), &path(), &config(vec![Construction::Interval])).unwrap();
    let mut buf = Vec::new();
    write_csv(&mut buf, 2, &rows).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "t,d,logd,z_1,z_2,U_par,U_int,U_pp,L_mono,U_disc,flags");
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first.len(), 11);
    assert!(first[5].is_empty() && !first[6].is_empty() && first[10].is_empty());
}

#[test]
fn failed_bounds_become_flags() {
    // no punctured polydisc fits around a boundary point of the product domain
    let rows = sweep(&catalog::product_one(), &path(), &config(vec![Construction::PuncturedPolydisc])).unwrap();
    assert!(rows.iter().all(|r| r.flags.iter().any(|f| f.starts_with("U_pp:"))));
}

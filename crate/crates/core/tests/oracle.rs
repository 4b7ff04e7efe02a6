//! Library operators against the naive evaluator in `common`.

mod common;

use common::*;
use lya::cochain::{self, pair_basis, standard_basis};
use lya::cohomology::{self, CohomologyLevel};
use lya::corpus;
use lya::deformation;
use lya::{OneCochain, Representation};

fn every_algebra() -> Vec<(&'static str, lya::LyaStructure)> {
    let mut all = corpus::corpus(2);
    all.extend(corpus::corpus(3));
    all
}

#[test]
fn delta1_matches_on_every_basis_map() {
    for (name, t) in every_algebra() {
        let r = Representation::regular(&t).unwrap();
        let alg = Alg::new(&t);
        for f in standard_basis(t.dim(), t.dim(), 1) {
            let lib = cochain::delta1(&t, &r, &OneCochain::from_cochain(&f).unwrap()).unwrap();
            let (a, b) = delta1(&alg, &Multi::from_cochain(&f));
            assert_eq!(Multi::from_cochain(lib.even()), a, "{name}");
            assert_eq!(Multi::from_cochain(lib.odd()), b, "{name}");
        }
    }
}

#[test]
fn delta_and_delta_star_match_at_level_one() {
    for (name, t) in every_algebra() {
        let r = Representation::regular(&t).unwrap();
        let alg = Alg::new(&t);
        for pair in pair_basis(1, t.dim(), t.dim()) {
            let (f, g) = (Multi::from_cochain(pair.even()), Multi::from_cochain(pair.odd()));
            let lib = cochain::delta(&t, &r, &pair).unwrap();
            let (a, b) = delta(&alg, 1, &f, &g);
            assert_eq!(Multi::from_cochain(lib.even()), a, "{name}");
            assert_eq!(Multi::from_cochain(lib.odd()), b, "{name}");
            let (s3, s4) = cochain::delta_star(&t, &r, &pair).unwrap();
            let (o3, o4) = delta_star(&alg, &f, &g);
            assert_eq!(Multi::from_cochain(&s3), o3, "{name}");
            assert_eq!(Multi::from_cochain(&s4), o4, "{name}");
        }
    }
}

#[test]
fn delta_matches_at_level_two_in_dimension_two() {
    for (name, t) in corpus::corpus(2) {
        let r = Representation::regular(&t).unwrap();
        let alg = Alg::new(&t);
        for pair in pair_basis(2, 2, 2) {
            let lib = cochain::delta(&t, &r, &pair).unwrap();
            let (a, b) = delta(&alg, 2, &Multi::from_cochain(pair.even()), &Multi::from_cochain(pair.odd()));
            assert_eq!(Multi::from_cochain(lib.even()), a, "{name}");
            assert_eq!(Multi::from_cochain(lib.odd()), b, "{name}");
        }
    }
}

#[test]
fn oracle_basis_has_the_library_dimension() {
    for n in 2..=3 {
        for deg in 1..=5 {
            assert_eq!(alternating_basis(n, deg).len(), cochain::cochain_space_dim(n, n, deg));
        }
    }
}

#[test]
fn h1_and_h23_dimensions_agree() {
    for (name, t) in every_algebra() {
        let r = Representation::regular(&t).unwrap();
        let alg = Alg::new(&t);
        let d1 = delta1_columns(&alg);
        let h1 = cohomology::h1(&t, &r).unwrap();
        assert_eq!(h1.dim_h, kernel(&d1).len(), "{name} H1");

        let z = z23_basis(&alg).len();
        let b = rank(&d1);
        let h23 = cohomology::h23(&t, &r).unwrap();
        assert_eq!((h23.dim_z_pair, h23.dim_b, h23.dim_h), (z, b, z - b), "{name} H2xH3");
    }
}

#[test]
fn level_two_dimensions_agree_in_dimension_two() {
    for (name, t) in corpus::corpus(2) {
        let r = Representation::regular(&t).unwrap();
        let alg = Alg::new(&t);
        let b4 = alternating_basis(2, 4);
        let b5 = alternating_basis(2, 5);
        let domain: Vec<(Multi, Multi)> = b4
            .iter()
            .map(|f| (f.clone(), Multi::zero(2, 5)))
            .chain(b5.iter().map(|g| (Multi::zero(2, 4), g.clone())))
            .collect();
        let columns: Vec<V> = domain
            .iter()
            .map(|(f, g)| {
                let (a, b) = delta(&alg, 2, f, g);
                a.flat_values().into_iter().chain(b.flat_values()).collect()
            })
            .collect();
        let z = kernel(&columns).len();
        let image: Vec<V> = alternating_basis(2, 2)
            .iter()
            .map(|f| (f.clone(), Multi::zero(2, 3)))
            .chain(alternating_basis(2, 3).iter().map(|g| (Multi::zero(2, 2), g.clone())))
            .map(|(f, g)| {
                let (a, b) = delta(&alg, 1, &f, &g);
                a.flat_values().into_iter().chain(b.flat_values()).collect()
            })
            .collect();
        let b = rank(&image);
        let rep = cohomology::compute(&t, &r, CohomologyLevel::H2p(2)).unwrap();
        assert_eq!((rep.dim_z_pair, rep.dim_b, rep.dim_h), (z, b, z - b), "{name}");
    }
}

#[test]
fn star_and_triangle_match() {
    let mut s = lya::sample::Sampler::new(11);
    for (name, t) in every_algebra() {
        let n = t.dim();
        for _ in 0..2 {
            let x = s.pair(1, n, n);
            let y = s.pair(1, n, n);
            let (fi, gi, fj, gj) = (
                Multi::from_cochain(x.even()),
                Multi::from_cochain(x.odd()),
                Multi::from_cochain(y.even()),
                Multi::from_cochain(y.odd()),
            );
            let lib = deformation::star(x.even(), x.odd(), y.even(), y.odd()).unwrap();
            assert_eq!(Multi::from_cochain(&lib), star(&fi, &gi, &fj, &gj), "{name}");
            let lib = deformation::triangle(x.odd(), y.odd()).unwrap();
            assert_eq!(Multi::from_cochain(&lib), triangle(&gi, &gj), "{name}");
        }
    }
}

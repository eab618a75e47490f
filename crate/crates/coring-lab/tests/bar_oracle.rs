//! Relative Hochschild dimensions from the library against the brute-force oracle.

mod oracle;

use std::sync::Arc;

use coring_lab::algebra::{diagonal, matrix_algebra, truncated_polynomial, upper_triangular, AlgebraExtension};
use coring_lab::bimodule::regular_bimodule;
use coring_lab::cochain::{cohomology_report, relative_hochschild_complex};
use coring_lab::exactlin::{Field, Matrix};

use oracle::{matrices, truncated};

fn library_dims(ext: &AlgebraExtension, max: usize) -> Vec<usize> {
    let cx = relative_hochschild_complex(ext, Arc::new(regular_bimodule(ext.big().clone())), max + 1).unwrap();
    let mut dims = cohomology_report(&cx).unwrap().dims;
    dims.truncate(max + 1);
    dims
}

#[test]
fn dual_numbers_over_gf2() {
    let o = truncated(2, 2);
    assert_eq!(o.cohomology(4), vec![2, 2, 2, 2, 2]);
    let f = Field::prime(2).unwrap();
    let ext = AlgebraExtension::over_field(Arc::new(truncated_polynomial(f, 2).unwrap()));
    assert_eq!(library_dims(&ext, 4), vec![2, 2, 2, 2, 2]);
}

#[test]
fn dual_numbers_over_gf3() {
    let o = truncated(3, 2);
    assert_eq!(o.cohomology(4), vec![2, 1, 1, 1, 1]);
    let f = Field::prime(3).unwrap();
    let ext = AlgebraExtension::over_field(Arc::new(truncated_polynomial(f, 2).unwrap()));
    assert_eq!(library_dims(&ext, 4), vec![2, 1, 1, 1, 1]);
}

#[test]
fn cubic_truncation_over_gf3_and_gf5() {
    for p in [3u64, 5] {
        let o = truncated(p as i64, 3);
        let f = Field::prime(p).unwrap();
        let ext = AlgebraExtension::over_field(Arc::new(truncated_polynomial(f, 3).unwrap()));
        assert_eq!(o.cohomology(3), library_dims(&ext, 3), "p = {p}");
    }
}

#[test]
fn matrix_algebra_is_separable() {
    let o = matrices(3, 2, false, false);
    assert_eq!(o.cohomology(2), vec![1, 0, 0]);
    let ext = AlgebraExtension::over_field(Arc::new(matrix_algebra(Field::prime(3).unwrap(), 2)));
    assert_eq!(library_dims(&ext, 2), vec![1, 0, 0]);
}

#[test]
fn triangular_over_field_and_over_diagonal() {
    let f = Field::prime(3).unwrap();
    let t2 = Arc::new(upper_triangular(f, 2));
    assert_eq!(matrices(3, 2, true, false).cohomology(3), library_dims(&AlgebraExtension::over_field(t2.clone()), 3));

    // T2 basis e00, e01, e11; D2 basis e00, e11
    let embed = Matrix::from_i64(f, &[&[1, 0], &[0, 0], &[0, 1]]);
    let ext = AlgebraExtension::new(Arc::new(diagonal(f, 2)), t2, embed).unwrap();
    let oracle = matrices(3, 2, true, true).cohomology(3);
    assert_eq!(oracle, library_dims(&ext, 3));
    assert_eq!(oracle[0], 1);
}

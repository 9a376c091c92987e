//! Values frozen from independent computations: a floating-point Python
//! evaluation of `h^-` through primitive-character Bernoulli sums, and a
//! Fraction-based Python lattice prototype for the group ring indices.

use distlab_core::cyclotomic::h_minus;
use distlab_core::stickelberger::{
    minus_index, principal_stickelberger_ideal, sin6_value, stickelberger_ideal, u_minus_index,
};
use distlab_core::{Error, Rat};

#[test]
fn relative_class_numbers() {
    let table: [(u64, u64); 27] = [
        (23, 3),
        (29, 8),
        (31, 9),
        (37, 37),
        (39, 2),
        (41, 121),
        (43, 211),
        (47, 695),
        (56, 2),
        (57, 9),
        (63, 7),
        (65, 64),
        (68, 8),
        (69, 69),
        (72, 3),
        (76, 19),
        (77, 1280),
        (80, 5),
        (84, 1),
        (87, 1536),
        (91, 53872),
        (92, 201),
        (93, 6795),
        (95, 107692),
        (96, 9),
        (99, 2883),
        (100, 55),
    ];
    for (m, h) in table {
        assert_eq!(h_minus(m).unwrap(), h, "m = {m}");
    }
    for m in [3u64, 4, 5, 7, 8, 9, 11, 12, 13, 15, 16, 20, 21, 24] {
        assert_eq!(h_minus(m).unwrap(), 1, "m = {m}");
    }
    assert_eq!(h_minus(6), Err(Error::InvalidLevel(6)));
}

#[test]
fn stickelberger_minus_indices() {
    for (m, idx) in [
        (5u64, 1i64),
        (12, 1),
        (13, 1),
        (23, 3),
        (28, 1),
        (29, 8),
        (31, 9),
        (35, 1),
        (39, 2),
        (40, 1),
        (56, 2),
    ] {
        let d = stickelberger_ideal(m).unwrap();
        assert_eq!(minus_index(&d).unwrap(), Rat::from(idx), "m = {m}");
        assert_eq!(d.s.rank(), d.s_minus.rank() + 1);
    }
}

#[test]
fn principal_ideal_loses_rank_or_index() {
    // Z[G] theta cap Z[G] agrees with S at prime levels and can lose rank elsewhere.
    for m in [13u64, 29, 31] {
        let d = principal_stickelberger_ideal(m).unwrap();
        assert_eq!(
            minus_index(&d).unwrap(),
            minus_index(&stickelberger_ideal(m).unwrap()).unwrap()
        );
    }
    for (m, rank) in [(28u64, 5usize), (39, 9), (40, 7), (56, 11)] {
        let d = principal_stickelberger_ideal(m).unwrap();
        assert_eq!(d.s_minus.rank(), rank, "m = {m}");
    }
}

#[test]
fn alpha_lattice_indices() {
    for (m, n, d) in [
        (13u64, 1i64, 26i64),
        (28, 1, 28),
        (29, 4, 29),
        (31, 9, 62),
        (39, 1, 39),
        (40, 1, 40),
        (56, 1, 28),
    ] {
        assert_eq!(sin6_value(m).unwrap(), Rat::new(n, d), "m = {m}");
    }
}

// 2^{2^{r-1}}; no independent oracle here.
#[test]
fn unit_minus_indices() {
    for (m, v) in [
        (5u64, 2i64),
        (12, 4),
        (15, 4),
        (28, 4),
        (105, 16),
        (60, 16),
        (16, 2),
    ] {
        assert_eq!(u_minus_index(m).unwrap(), Rat::from(v), "m = {m}");
    }
}

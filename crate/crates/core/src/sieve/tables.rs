use crate::exactalg::TruncatedQPoly;
use crate::quadrics::QuadricKind;

/// Lowest trusted degree of rows known only up to `o(q^6)`.
pub const TRUNCATED_FLOOR: i32 = 6;

fn t(terms: &[(i32, i64)]) -> TruncatedQPoly {
    TruncatedQPoly::from_terms(terms.iter().copied())
}

fn tr(terms: &[(i32, i64)]) -> TruncatedQPoly {
    t(terms).truncate(TRUNCATED_FLOOR)
}

/// `p_n = #P^n(F_q) = q^n + ... + 1`.
fn p(n: u32) -> TruncatedQPoly {
    TruncatedQPoly::projective(n as i32)
}

fn row(kind: QuadricKind, twist: &str, d: u32) -> Option<TruncatedQPoly> {
    use QuadricKind::*;
    let r = match (kind, twist, d) {
        (Cone, "", 0) => t(&[(15, 1)]),
        (Cone, "", 1) => t(&[(14, -1), (13, -1)]),
        (Cone, "", 2) => t(&[(12, 1)]),
        (Cone, "", 3) => TruncatedQPoly::zero(),

        (Cone, "1", 0) => t(&[(16, 1), (15, 1)]),
        (Cone, "1", 1) => t(&[(15, -1), (14, -3), (13, -1), (12, 1)]),
        (Cone, "1", 2) => t(&[(13, 2), (12, 1), (11, -1)]),
        (Cone, "1", 3) => TruncatedQPoly::zero(),

        (Cone, "1,1", 0) => t(&[(17, 1), (16, 2), (14, -1)]),
        (Cone, "1,1", 1) => t(&[(16, -1), (15, -5), (14, -3), (13, 3), (12, 2)]),
        (Cone, "1,1", 2) => t(&[(14, 3), (13, 4), (12, -3), (11, -3), (10, 1)]),
        (Cone, "1,1", 3) => t(&[(12, -1), (11, 1), (10, 1), (9, -1)]),

        (Cone, "1,1,1", 0) => t(&[(18, 1), (17, 3), (15, -5), (14, -1), (13, 2)]),
        (Cone, "1,1,1", 1) => t(&[(17, -1), (16, -7), (15, -6), (14, 12), (13, 7), (12, -5)]),
        (Cone, "1,1,1", 2) => t(&[(15, 4), (14, 9), (13, -10), (12, -9), (11, 6)]),
        (Cone, "1,1,1", 3) => t(&[(13, -3), (12, 5), (11, -5), (10, 7), (9, 2), (8, -12), (7, 6)]),

        (Cone, "2", 0) => t(&[(17, 1), (14, -1)]),
        (Cone, "2", 1) => t(&[(16, -1), (15, -1), (14, 1), (13, 1)]),
        (Cone, "2", 2) => t(&[(14, 1), (13, -2), (12, 1), (11, 1), (10, -1)]),
        (Cone, "2", 3) => t(&[(12, 1), (11, -1), (10, -1), (9, 1)]),

        (Cone, "2,1", 0) => t(&[(18, 1), (17, 1), (15, -1), (14, -1)]),
        (Cone, "2,1", 1) => t(&[(17, -1), (16, -3), (14, 4), (13, 1), (12, -1)]),
        (Cone, "2,1", 2) => t(&[(15, 2), (14, -1), (13, -4), (12, 3), (11, 2), (10, -2)]),
        (Cone, "2,1", 3) => t(&[(13, 1), (12, 1), (11, -5), (10, 1), (9, 4), (8, -2)]),

        (Cone, "3", 0) => t(&[(18, 1), (15, 1), (14, -1), (13, -1)]),
        (Cone, "3", 1) => t(&[(17, -1), (16, -1), (13, 1), (12, 1)]),
        (Cone, "3", 2) => t(&[(15, 1), (13, -1)]),
        (Cone, "3", 3) => t(&[(12, -1), (11, 1), (10, 1), (9, -1)]),

        (Nonsplit, "", 0) => p(15),
        (Nonsplit, "", 1) => &t(&[(2, -1), (0, -1)]) * &p(12),
        (Nonsplit, "", 2) => TruncatedQPoly::zero(),
        (Nonsplit, "", 3) => &t(&[(4, 1), (2, 1)]) * &p(6),

        (Nonsplit, "1", 0) => &t(&[(2, 1), (0, 1)]) * &p(14),
        (Nonsplit, "1", 1) => -(&(&t(&[(4, 1), (2, 1)]) * &p(11)) + &(&t(&[(2, 1), (0, 1)]) * &p(12))),
        (Nonsplit, "1", 2) => t(&[(13, 1), (11, 1)]),
        (Nonsplit, "1", 3) => &(&t(&[(6, 1), (4, 1)]) * &p(5)) + &(&t(&[(4, 1), (2, 1)]) * &p(6)),

        (Nonsplit, "1,1", 0) => &t(&[(4, 1), (2, 1)]) * &p(13),
        (Nonsplit, "1,1", 1) => {
            &(&t(&[(6, -1), (2, 1)]) * &p(10)) - &(&t(&[(4, 2), (2, 2)]) * &p(11))
        }
        (Nonsplit, "1,1", 2) => t(&[(14, 2), (13, 1), (12, 1), (11, 1), (10, -1)]),
        (Nonsplit, "1,1", 3) => t(&[(11, 3), (10, 3), (9, 5), (8, 5), (7, 3), (6, 3), (5, 1), (4, 1)]),

        (Nonsplit, "1,1,1", 0) => &t(&[(6, 1), (2, -1)]) * &p(12),
        (Nonsplit, "1,1,1", 1) => {
            &(&t(&[(8, -1), (6, 2), (4, 1), (2, -2)]) * &p(9)) - &(&t(&[(6, 3), (2, -3)]) * &p(10))
        }
        (Nonsplit, "1,1,1", 2) => t(&[(15, 3), (14, 3), (13, -3), (11, -3), (10, -3), (9, 3)]),
        (Nonsplit, "1,1,1", 3) => {
            t(&[(13, -2), (12, 6), (11, 2), (10, 2), (9, 3), (8, -5), (7, -2), (6, -2), (5, -1), (4, -1)])
        }

        (Nonsplit, "2", 0) => &t(&[(4, 1), (2, 1)]) * &p(13),
        (Nonsplit, "2", 1) => &t(&[(6, -1), (4, -2), (2, -1)]) * &p(10),
        (Nonsplit, "2", 2) => t(&[(13, -1), (12, -1), (11, -1), (10, -1)]),
        (Nonsplit, "2", 3) => tr(&[(12, 4), (11, 3), (10, 5), (9, 5), (8, 3), (7, 3), (6, 3)]),

        (Nonsplit, "2,1", 0) => &t(&[(6, 1), (4, 2), (2, 1)]) * &p(12),
        (Nonsplit, "2,1", 1) => {
            let a = &t(&[(6, 1), (4, 2), (2, 1)]) * &p(10);
            let b = &t(&[(8, 1), (6, 2), (4, 1)]) * &p(9);
            -(&a + &b)
        }
        (Nonsplit, "2,1", 2) => t(&[(15, 1), (14, -1), (13, 1), (12, -2), (11, -1), (10, -1), (9, -1)]),
        (Nonsplit, "2,1", 3) => tr(&[(13, 4), (12, 6), (11, 8), (10, 10), (9, 7), (8, 7), (7, 4), (6, 4)]),

        (Nonsplit, "3", 0) => tr(&[(18, 1), (17, 1), (16, 1), (15, 1)]),
        (Nonsplit, "3", 1) => tr(&[(17, -1), (16, -1), (15, -2), (14, -2), (13, -1), (12, -1), (7, 1), (6, 1)]),
        (Nonsplit, "3", 2) => TruncatedQPoly::zero(),
        (Nonsplit, "3", 3) => tr(&[(13, 1), (11, 2), (10, 2), (8, 1), (7, -2), (6, -2)]),

        (Split, "", 0) => p(15),
        (Split, "", 1) => &t(&[(2, -1), (1, -2), (0, -1)]) * &p(12),
        (Split, "", 2) => &t(&[(3, 2), (2, 2), (1, 2)]) * &p(9),
        (Split, "", 3) => &t(&[(4, -1), (3, -2), (2, -1)]) * &p(6),

        (Split, "1", 0) => &sq_q_plus_1() * &p(14),
        (Split, "1", 1) => {
            let inner = &(&t(&[(2, 1), (1, 2)]) * &p(11)) + &p(12);
            -(&sq_q_plus_1() * &inner)
        }
        (Split, "1", 2) => tr(&[(13, 3), (12, 12), (11, 21), (10, 24), (9, 24), (8, 24), (7, 24), (6, 24)]),
        (Split, "1", 3) => tr(&[(11, -3), (10, -10), (9, -15), (8, -16), (7, -16), (6, -16)]),

        (Split, "1,1", 0) => &(&sq_q_plus_1() * &t(&[(2, 1), (1, 2)])) * &p(13),
        (Split, "1,1", 1) => {
            let lead = &sq_q_plus_1() * &t(&[(2, 1), (1, 2)]);
            let inner = &(&t(&[(2, 1), (1, 2), (0, -1)]) * &p(10)) + &p(11).scale(&crate::exactalg::int(2));
            -(&lead * &inner)
        }
        (Split, "1,1", 2) => {
            tr(&[(14, 4), (13, 27), (12, 61), (11, 75), (10, 73), (9, 72), (8, 72), (7, 72), (6, 70)])
        }
        (Split, "1,1", 3) => tr(&[(12, -10), (11, -31), (10, -45), (9, -49), (8, -49), (7, -47), (6, -41)]),

        (Split, "1,1,1", 0) => {
            &(&(&sq_q_plus_1() * &t(&[(2, 1), (1, 2)])) * &t(&[(2, 1), (1, 2), (0, -1)])) * &p(12)
        }
        (Split, "1,1,1", 1) => tr(&[
            (17, -1),
            (16, -12),
            (15, -54),
            (14, -106),
            (13, -117),
            (12, -102),
            (11, -96),
            (10, -96),
            (9, -96),
            (8, -96),
            (7, -95),
            (6, -87),
        ]),
        (Split, "1,1,1", 2) => tr(&[
            (15, 5),
            (14, 53),
            (13, 151),
            (12, 190),
            (11, 153),
            (10, 141),
            (9, 147),
            (8, 142),
            (7, 128),
            (6, 90),
        ]),
        (Split, "1,1,1", 3) => {
            tr(&[(13, -30), (12, -96), (11, -116), (10, -94), (9, -97), (8, -93), (7, -62), (6, -24)])
        }

        (Split, "2", 0) => tr(&[(17, 1), (16, 1), (15, 2)]),
        (Split, "2", 1) => tr(&[(16, -1), (15, -3), (14, -5), (13, -5), (12, -2)]),
        (Split, "2", 2) => tr(&[(14, 2), (13, 5), (12, 11), (11, 5), (10, 1), (6, -2)]),
        (Split, "2", 3) => tr(&[(12, -2), (11, -7), (10, -7), (9, -1), (8, 1), (7, 1), (6, 3)]),

        (Split, "2,1", 0) => tr(&[(18, 1), (17, 3), (16, 5), (15, 5), (14, 2)]),
        (Split, "2,1", 1) => {
            tr(&[(17, -1), (16, -6), (15, -16), (14, -22), (13, -15), (12, -4), (7, 1), (6, 5)])
        }
        (Split, "2,1", 2) => tr(&[
            (15, 3),
            (14, 17),
            (13, 35),
            (12, 32),
            (11, 11),
            (10, -1),
            (9, -1),
            (8, -2),
            (7, -8),
            (6, -18),
        ]),
        (Split, "2,1", 3) => tr(&[(13, -8), (12, -24), (11, -26), (10, -10), (9, 3), (8, 7), (7, 12), (6, 18)]),

        (Split, "3", 0) => tr(&[(18, 1), (17, 1), (16, 1), (15, 3), (14, 2)]),
        (Split, "3", 1) => tr(&[(17, -1), (16, -3), (15, -6), (14, -10), (13, -9), (12, -3), (7, 1), (6, 3)]),
        (Split, "3", 2) => tr(&[(15, 2), (14, 8), (13, 16), (12, 16), (11, 6), (8, -2), (7, -4), (6, -6)]),
        (Split, "3", 3) => tr(&[(13, -3), (12, -12), (11, -14), (10, -4), (9, 2), (8, 3), (7, 4), (6, 6)]),

        _ => return None,
    };
    Some(r)
}

fn sq_q_plus_1() -> TruncatedQPoly {
    t(&[(2, 1), (1, 2), (0, 1)])
}

/// The tabulated sieve term for a quadric kind, twist key (comma-joined
/// partition, empty for no marked points) and `d <= 3`.
pub(crate) fn lookup(kind: QuadricKind, twist_key: &str, d: u32) -> Option<TruncatedQPoly> {
    row(kind, twist_key, d)
}

use std::cmp::Ordering;

use metallic::arithmetic::{add, compare, complement, decrement, increment, subtract, CarryTable};
use metallic::numeration::{decode, encode_u64, is_canonical, seq_m, Grade, MetallicCode};
use metallic::Error;
use num_bigint::BigUint;
use num_traits::ToPrimitive;

fn grade(p: u32) -> Grade {
    Grade::new(p).unwrap()
}

fn code(p: u32, text: &str) -> MetallicCode {
    MetallicCode::parse(grade(p), text).unwrap()
}

fn value(c: &MetallicCode) -> u64 {
    decode(c.grade(), c.digits()).to_u64().unwrap()
}

/// Every canonical code with at most `len` digits, in increasing order.
fn codes_up_to_length(p: u32, len: usize) -> Vec<MetallicCode> {
    let g = grade(p);
    let mut out = vec![MetallicCode::zero(g)];
    while out.last().unwrap().len() <= len {
        out.push(increment(out.last().unwrap()));
    }
    out.pop();
    out
}

#[test]
fn carry_table_grows_and_clears() {
    let mut table = CarryTable::new(2);
    assert!(table.is_clear());
    table.add(1);
    table.add(5);
    assert_eq!(table.entries(), &[0, 1, 0, 0, 0, 1]);
    assert!(!table.is_clear());
}

#[test]
fn add_examples() {
    // Each expected code is checked against integer arithmetic through decode.
    let cases = [(5, "21", "1", "100"), (5, "10", "0", "10"), (5, "11", "11", "100"), (7, "10", "10", "20")];
    for (p, a, b, sum) in cases {
        let got = add(&code(p, a), &code(p, b)).unwrap();
        assert_eq!(got, code(p, sum), "p={p} {a}+{b}");
        assert_eq!(value(&got), value(&code(p, a)) + value(&code(p, b)));
    }
}

#[test]
fn compare_examples() {
    assert_eq!(compare(&code(5, "100"), &code(5, "21")).unwrap(), Ordering::Greater);
    assert_eq!(compare(&code(5, "11"), &code(5, "11")).unwrap(), Ordering::Equal);
    assert_eq!(compare(&code(5, "12"), &code(5, "20")).unwrap(), Ordering::Less);
}

#[test]
fn complement_examples() {
    // m_3 - 8 = 13, whose code is 112 (111 is 12).
    assert_eq!(complement(&code(5, "100"), 3).unwrap(), code(5, "112"));
    assert_eq!(value(&code(5, "112")), 13);
    assert_eq!(complement(&code(5, "0"), 2).unwrap(), code(5, "100"));
    assert_eq!(complement(&code(5, "10"), 1).unwrap(), code(5, "0"));
    assert_eq!(complement(&code(5, "0"), 0).unwrap(), code(5, "1"));
    assert_eq!(complement(&code(5, "101"), 2), Err(Error::ComplementOutOfRange { k: 2 }));
}

#[test]
fn subtract_examples() {
    assert_eq!(subtract(&code(5, "100"), &code(5, "21")).unwrap(), code(5, "1"));
    assert_eq!(subtract(&code(5, "21"), &code(5, "21")).unwrap(), code(5, "0"));
    assert_eq!(subtract(&code(5, "1000"), &code(5, "11")).unwrap(), code(5, "201"));
    assert_eq!(value(&code(5, "201")), 17);
    assert_eq!(subtract(&code(5, "11"), &code(5, "12")), Err(Error::NegativeResult));
}

#[test]
fn increment_examples() {
    assert_eq!(increment(&code(5, "2")), code(5, "10"));
    assert_eq!(increment(&code(5, "0")), code(5, "1"));
    assert_eq!(increment(&code(5, "21")), code(5, "100"));
    assert_eq!(increment(&code(5, "11")), code(5, "12"));
}

#[test]
fn decrement_examples() {
    assert_eq!(decrement(&code(5, "10")).unwrap(), code(5, "2"));
    assert_eq!(decrement(&code(5, "1")).unwrap(), code(5, "0"));
    assert_eq!(decrement(&code(5, "100")).unwrap(), code(5, "21"));
    assert_eq!(decrement(&code(5, "0")), Err(Error::ZeroNode));
}

#[test]
fn grade_mismatch_is_reported() {
    assert_eq!(add(&code(5, "1"), &code(7, "1")), Err(Error::GradeMismatch(5, 7)));
    assert_eq!(compare(&code(5, "1"), &code(7, "1")), Err(Error::GradeMismatch(5, 7)));
    assert_eq!(subtract(&code(9, "1"), &code(7, "1")), Err(Error::GradeMismatch(9, 7)));
}

#[test]
fn add_matches_integers() {
    for p in [5, 7, 9] {
        let g = grade(p);
        let codes: Vec<MetallicCode> = (0..=600u64).map(|n| encode_u64(g, n)).collect();
        for (a, ca) in codes.iter().enumerate().step_by(3) {
            for (b, cb) in codes.iter().enumerate() {
                let sum = add(ca, cb).unwrap();
                assert_eq!(value(&sum), (a + b) as u64, "p={p} {a}+{b}");
                assert!(is_canonical(g, sum.digits()));
            }
        }
    }
}

#[test]
fn increment_and_decrement_walk_the_integers() {
    for p in [5, 6, 7, 9] {
        let g = grade(p);
        let mut c = MetallicCode::zero(g);
        for n in 0..20_000u64 {
            let next = increment(&c);
            assert_eq!(next, encode_u64(g, n + 1), "p={p} n={n}");
            assert_eq!(decrement(&next).unwrap(), c);
            c = next;
        }
    }
}

#[test]
fn decrement_undoes_increment_on_short_codes() {
    for p in [5, 7] {
        for c in codes_up_to_length(p, if p == 5 { 8 } else { 6 }) {
            assert_eq!(decrement(&increment(&c)).unwrap(), c);
        }
    }
}

#[test]
fn compare_matches_integers_on_short_codes() {
    let codes = codes_up_to_length(5, 6);
    for (i, a) in codes.iter().enumerate() {
        for (j, b) in codes.iter().enumerate() {
            assert_eq!(compare(a, b).unwrap(), i.cmp(&j));
        }
    }
}

#[test]
fn complement_covers_every_operand() {
    for p in [5, 6, 7, 9] {
        let g = grade(p);
        for k in 0..=8usize {
            let mk = seq_m(g, k as i64).to_u64().unwrap();
            if mk > 30_000 {
                break;
            }
            for b in 0..=mk {
                let cb = encode_u64(g, b);
                let c = complement(&cb, k).unwrap();
                assert_eq!(value(&c), mk - b, "p={p} k={k} b={b}");
                assert!(is_canonical(g, c.digits()));
            }
        }
    }
}

#[test]
fn complement_with_leading_d() {
    // Operands whose leading digit is d, including inversions right below it.
    let g = grade(7);
    for text in ["4", "40", "403", "4034", "4333", "4000", "4303"] {
        let b = code(7, text);
        let k = b.len();
        let mk = seq_m(g, k as i64);
        let c = complement(&b, k).unwrap();
        assert_eq!(c.value() + b.value(), mk, "b={text}");
    }
}

#[test]
fn subtract_matches_integers() {
    for p in [5, 7, 9] {
        let g = grade(p);
        for a in (0..=5000u64).step_by(37) {
            for b in (0..=a).step_by(23) {
                let d = subtract(&encode_u64(g, a), &encode_u64(g, b)).unwrap();
                assert_eq!(value(&d), a - b, "p={p} {a}-{b}");
            }
        }
    }
}

#[test]
fn large_operands_stay_exact() {
    let g = grade(9);
    let a = metallic::numeration::encode(g, &(BigUint::from(10u32).pow(40) + 12345u32));
    let b = metallic::numeration::encode(g, &BigUint::from(987654321u64));
    assert_eq!(add(&a, &b).unwrap().value(), a.value() + b.value());
    assert_eq!(subtract(&a, &b).unwrap().value(), a.value() - b.value());
    assert_eq!(increment(&a).value(), a.value() + 1u32);
}

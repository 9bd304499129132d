use metallic::numeration::{decode, seq_big_m, seq_m, Grade, MetallicCode};
use metallic::trees::{
    black_to_white_number, classify, decomposition_vectors, format_son_word, leftmost_number, level_of, pi_codes,
    preferred_son, rightmost_number, son_groups, sons_signature_word, successor, zero_branch, NodeClass, NodeType,
    Status, SuccessorPlace, TreeKind,
};
use metallic::Error;
use num_bigint::BigUint;

fn grade(p: u32) -> Grade {
    Grade::new(p).unwrap()
}

fn code(p: u32, text: &str) -> MetallicCode {
    MetallicCode::parse(grade(p), text).unwrap()
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn word(p: u32, kind: TreeKind, node_type: NodeType) -> String {
    let class = NodeClass { kind, node_type, signature: 0 };
    format_son_word(&sons_signature_word(grade(p), &class))
}

#[test]
fn level_of_examples() {
    assert_eq!(level_of(grade(5), TreeKind::White, &big(12)), 2);
    assert_eq!(level_of(grade(9), TreeKind::White, &big(1)), 0);
    assert_eq!(level_of(grade(5), TreeKind::Black, &big(8)), 2);
    assert_eq!(level_of(grade(5), TreeKind::White, &big(13)), 3);
    assert_eq!(level_of(grade(5), TreeKind::Black, &big(9)), 3);
}

#[test]
fn level_boundaries() {
    let g = grade(7);
    for level in 0..10 {
        assert_eq!(rightmost_number(g, TreeKind::White, level), seq_big_m(g, level as i64));
        assert_eq!(rightmost_number(g, TreeKind::Black, level), seq_m(g, level as i64));
        for kind in [TreeKind::White, TreeKind::Black] {
            assert_eq!(level_of(g, kind, &leftmost_number(g, kind, level)), level);
            assert_eq!(level_of(g, kind, &rightmost_number(g, kind, level)), level);
        }
    }
}

#[test]
fn classify_examples() {
    let w0 = classify(TreeKind::White, &code(5, "10")).unwrap();
    assert_eq!((w0.node_type, w0.status(), w0.signature), (NodeType::W0, Status::White, 0));
    assert_eq!(classify(TreeKind::White, &code(5, "2")).unwrap().node_type, NodeType::B2);
    let root = classify(TreeKind::Black, &code(5, "1")).unwrap();
    assert_eq!((root.node_type, root.status()), (NodeType::BlackRoot, Status::Black));
    // m_2 = 24 is the rightmost node of level 2 of the black tree.
    let m2 = code(7, "100");
    assert_eq!(m2.value(), big(24));
    assert_eq!(classify(TreeKind::Black, &m2).unwrap().node_type, NodeType::W0);
    assert_eq!(classify(TreeKind::White, &MetallicCode::zero(grade(5))), Err(Error::ZeroNode));
}

#[test]
fn leftmost_black_node_of_the_first_level_has_signature_two() {
    for p in [5, 6, 7, 9] {
        let class = classify(TreeKind::Black, &code(p, "2")).unwrap();
        assert_eq!((class.node_type, class.signature), (NodeType::B1, 2), "p={p}");
    }
}

#[test]
fn son_word_examples() {
    assert_eq!(word(9, TreeKind::White, NodeType::W1), "b2:2 wa:3 wa:4 wa:5 wa:6 w0:0 w1:1");
    assert_eq!(word(5, TreeKind::Black, NodeType::B0), "b0:0 wa:1");
    assert_eq!(word(5, TreeKind::White, NodeType::B2), "b2:2 w0:0");
    assert_eq!(word(7, TreeKind::White, NodeType::Wa), "b1:1 wa:2 wa:3 wa:4 w0:0");
    assert_eq!(word(7, TreeKind::White, NodeType::W0), "b1:1 wa:2 wa:3 w0:0 w1:1");
    assert_eq!(word(7, TreeKind::Black, NodeType::Wa), "b0:0 wa:1 wa:2 wa:3 wa:4");
    assert_eq!(word(7, TreeKind::Black, NodeType::W0), "b0:0 wa:1 wa:2 wa:3 w0:0");
    assert_eq!(word(7, TreeKind::Black, NodeType::B1), "b1:1 wa:2 wa:3 wa:4");
    assert_eq!(word(7, TreeKind::Black, NodeType::BlackRoot), "b1:2 wa:3 wa:4 w0:0");
}

#[test]
fn son_counts_follow_the_production_rules() {
    for p in [5, 6, 7, 9, 11] {
        let g = grade(p);
        let n = p as usize;
        for t in [NodeType::B1, NodeType::B2] {
            assert_eq!(son_groups(g, TreeKind::White, t).len(), n - 3);
        }
        for t in [NodeType::Wa, NodeType::W0, NodeType::W1] {
            assert_eq!(son_groups(g, TreeKind::White, t).len(), n - 2);
        }
        for t in [NodeType::B0, NodeType::B1, NodeType::BlackRoot] {
            assert_eq!(son_groups(g, TreeKind::Black, t).len(), n - 3);
        }
        for t in [NodeType::Wa, NodeType::W0] {
            assert_eq!(son_groups(g, TreeKind::Black, t).len(), n - 2);
        }
    }
}

#[test]
fn preferred_son_examples() {
    let root = preferred_son(&code(5, "1")).unwrap();
    assert_eq!((root.code.clone(), root.position, root.son_count), (code(5, "10"), 2, 3));
    assert_eq!(root.code.value(), big(3));
    let three = preferred_son(&code(5, "10")).unwrap();
    assert_eq!(three.code, code(5, "100"));
    assert_eq!(three.code.value(), big(8));
    let seven = preferred_son(&code(9, "10")).unwrap();
    assert_eq!(seven.code.value(), big(48));
    // Black and wa nodes put their preferred son last.
    let b = preferred_son(&code(7, "2")).unwrap();
    assert_eq!((b.position, b.son_count), (4, 4));
}

#[test]
fn successor_examples() {
    let s = successor(&code(5, "2")).unwrap();
    assert_eq!((s.place, s.code.clone()), (SuccessorPlace::LeftmostSonOfNext, code(5, "20")));
    assert_eq!(s.code.value(), big(6));
    let s = successor(&code(5, "10")).unwrap();
    assert_eq!((s.place, s.code.value()), (SuccessorPlace::RightmostOfNextLevel, big(8)));
    // The root is the rightmost node of level 0: its successor is m_1.
    let s = successor(&code(9, "1")).unwrap();
    assert_eq!((s.place, s.code.value()), (SuccessorPlace::RightmostOfNextLevel, big(7)));
}

#[test]
fn black_to_white_examples() {
    let g = grade(5);
    assert_eq!(black_to_white_number(g, &big(7)), big(8));
    assert_eq!(black_to_white_number(g, &big(1)), big(1));
    assert_eq!(black_to_white_number(g, &big(17)), big(21));
    assert_eq!(black_to_white_number(g, &big(3)), big(3));
}

#[test]
fn pi_codes_name_m_n() {
    for p in [5, 6, 7, 9] {
        let g = grade(p);
        for n in 2..=10usize {
            let (white, black) = pi_codes(g, n);
            assert_eq!(white.value(), seq_m(g, n as i64));
            assert_eq!(black_to_white_number(g, &black.value()), seq_m(g, n as i64), "p={p} n={n}");
        }
    }
    assert_eq!(pi_codes(grade(5), 3).1, code(5, "201"));
    assert_eq!(code(5, "201").value(), big(17));
}

#[test]
fn decomposition_vector_examples() {
    let white = decomposition_vectors(grade(9), TreeKind::White, 2);
    assert!(white.contains(&code(9, "201")));
    let black = decomposition_vectors(grade(9), TreeKind::Black, 1);
    assert!(black.contains(&code(9, "16")));
    let white5 = decomposition_vectors(grade(5), TreeKind::White, 1);
    assert_eq!(white5.last(), Some(&code(5, "111")));
    assert_eq!(white5, vec![code(5, "20"), code(5, "101"), code(5, "111")]);
}

#[test]
fn white_vectors_step_down_by_m_n() {
    for p in [5, 6, 7, 9, 11] {
        let g = grade(p);
        for n in 1..=10usize {
            let vectors = decomposition_vectors(g, TreeKind::White, n);
            assert_eq!(vectors.len(), p as usize - 2);
            for (i, v) in vectors.iter().enumerate() {
                let k = vectors.len() - 1 - i;
                assert_eq!(decode(g, v.digits()), seq_big_m(g, n as i64 + 1) - seq_m(g, n as i64) * k);
            }
            let black = decomposition_vectors(g, TreeKind::Black, n);
            assert_eq!(black.len(), p as usize - 3);
            assert_eq!(black.last().unwrap().value(), seq_m(g, n as i64 + 1));
        }
    }
}

#[test]
fn zero_branch_examples() {
    assert_eq!(zero_branch(&code(5, "10"), 3).unwrap(), code(5, "10000"));
    assert_eq!(zero_branch(&code(9, "201"), 2).unwrap(), code(9, "20100"));
    assert_eq!(zero_branch(&code(5, "21"), 1).unwrap(), code(5, "210"));
    assert_eq!(zero_branch(&MetallicCode::zero(grade(5)), 1), Err(Error::ZeroNode));
}

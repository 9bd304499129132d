use metallic::navigation::{
    father, father_black, locate_strip, neighbors_black, neighbors_of_tile, neighbors_white, path_black,
    path_bottom_up, path_top_down, path_via_strips, strip_to_white_number, Neighbor, Shift, TileAddress, Tiling,
};
use metallic::numeration::{encode_u64, Grade, MetallicCode};
use metallic::sampling::{random_code, sample_codes};
use metallic::{Error, Execution, NodeType, Status};
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn grade(p: u32) -> Grade {
    Grade::new(p).unwrap()
}

fn code(p: u32, text: &str) -> MetallicCode {
    MetallicCode::parse(grade(p), text).unwrap()
}

fn tile(p: u32, text: &str) -> Neighbor {
    Neighbor::Tile(code(p, text))
}

fn numbers(trace: &metallic::PathTrace) -> Vec<u64> {
    trace.numbers().iter().map(|n| u64::try_from(n.clone()).unwrap()).collect()
}

#[test]
fn father_examples() {
    assert_eq!(father(&code(5, "102")).unwrap(), code(5, "11"));
    assert_eq!(father(&code(5, "10")).unwrap(), code(5, "1"));
    assert_eq!(father(&code(5, "21")).unwrap(), code(5, "10"));
    assert_eq!(father(&code(5, "111")).unwrap(), code(5, "11"));
    assert_eq!(father(&code(5, "1")), Err(Error::LeadingTile));
    assert_eq!(father(&MetallicCode::zero(grade(5))), Err(Error::ZeroNode));
}

#[test]
fn black_father_examples() {
    // Black tree, p = 5: level 1 is 2 3, level 2 is 4 5 | 6 7 8.
    assert_eq!(father_black(&code(5, "11")).unwrap(), code(5, "2"));
    assert_eq!(father_black(&code(5, "20")).unwrap(), code(5, "10"));
    assert_eq!(father_black(&code(5, "100")).unwrap(), code(5, "10"));
    assert_eq!(father_black(&code(5, "10")).unwrap(), code(5, "1"));
    assert_eq!(father_black(&code(5, "1")), Err(Error::LeadingTile));
}

#[test]
fn white_neighbors_of_node_three() {
    let set = neighbors_white(Tiling::P4, &code(5, "10")).unwrap();
    assert_eq!(set.entries, vec![tile(5, "1"), tile(5, "21"), tile(5, "100"), tile(5, "101"), tile(5, "102")]);
    let set = neighbors_white(Tiling::P23, &code(5, "10")).unwrap();
    assert_eq!(set.entries.len(), 7);
    assert_eq!(set.entries.last(), Some(&tile(5, "11")));
    assert_eq!(set.entries[1], tile(5, "2"));
}

#[test]
fn leading_tile_neighbors() {
    let set = neighbors_white(Tiling::P4, &code(5, "1")).unwrap();
    assert_eq!(set.entries[0], Neighbor::Central);
    assert_eq!(&set.entries[1..4], &[tile(5, "2"), tile(5, "10"), tile(5, "11")]);
    assert_eq!(set.entries[4], Neighbor::Sector { shift: Shift::Next, code: code(5, "2") });
    let set = neighbors_white(Tiling::P23, &code(5, "1")).unwrap();
    assert_eq!(set.entries[1], Neighbor::Sector { shift: Shift::Previous, code: code(5, "1") });
    assert_eq!(set.entries[6], Neighbor::Sector { shift: Shift::Next, code: code(5, "1") });
}

#[test]
fn right_type_white_tiles_meet_the_two_son_of_the_next_tile() {
    // w0 and w1 tiles: the last side is [ν]2, the leftmost son of ν+1.
    let set = neighbors_white(Tiling::P4, &code(7, "10")).unwrap();
    assert_eq!(set.entries.last(), Some(&tile(7, "102")));
    assert_eq!(code(7, "102").value(), BigUint::from(26u32));
    // The rightmost tile of a level wraps into the next sector.
    let set = neighbors_white(Tiling::P4, &code(7, "11")).unwrap();
    assert_eq!(set.entries.last(), Some(&Neighbor::Sector { shift: Shift::Next, code: code(7, "12") }));
    // wa tiles: [ν]1.
    let set = neighbors_white(Tiling::P4, &code(7, "3")).unwrap();
    assert_eq!(set.entries.last(), Some(&tile(7, "31")));
}

#[test]
fn central_tile_neighbors() {
    let around = neighbors_of_tile(grade(5), Tiling::P23, &TileAddress::central()).unwrap();
    assert_eq!(around.len(), 7);
    assert!(around.iter().enumerate().all(|(i, t)| t.sector == i as u32 + 1 && t.code == Some(code(5, "1"))));
    let back = neighbors_of_tile(grade(5), Tiling::P4, &TileAddress::new(3, code(5, "1"))).unwrap();
    assert_eq!(back[0], TileAddress::central());
    assert_eq!(back[4], TileAddress::new(4, code(5, "2")));
}

#[test]
fn sector_wraparound() {
    // The leftmost tile of level 1 borders the previous sector's leading tile.
    let tiles = neighbors_of_tile(grade(5), Tiling::P4, &TileAddress::new(1, code(5, "2"))).unwrap();
    assert_eq!(tiles[1], TileAddress::new(5, code(5, "1")));
    let tiles = neighbors_of_tile(grade(5), Tiling::P4, &TileAddress::new(5, code(5, "11"))).unwrap();
    assert_eq!(tiles.last(), Some(&TileAddress::new(1, code(5, "12"))));
}

#[test]
fn black_neighbor_examples() {
    // Black node 2 (leftmost of level 1, p = 5) in strip 0.
    let set = neighbors_black(Tiling::P4, &code(5, "2"), 0).unwrap();
    assert_eq!(set.entries.len(), 5);
    assert_eq!(set.entries[0], tile(5, "1"));
    assert_eq!(set.entries[1], Neighbor::Sector { shift: Shift::Previous, code: code(5, "1") });
    assert_eq!(&set.entries[2..], &[tile(5, "11"), tile(5, "12"), tile(5, "20")]);
    // In a later strip the same side crosses into the previous strip.
    let set = neighbors_black(Tiling::P4, &code(5, "2"), 2).unwrap();
    assert_eq!(set.entries[1], Neighbor::Strip { shift: Shift::Previous, code: code(5, "10") });
    // The leading tile of a strip.
    let set = neighbors_black(Tiling::P4, &code(5, "1"), 0).unwrap();
    assert_eq!(set.entries[0], Neighbor::Central);
    assert_eq!(set.entries[3], Neighbor::Strip { shift: Shift::Next, code: code(5, "1") });
    // A w0 tile in {p+2,3}: both trailing sides cross into the next strip.
    let set = neighbors_black(Tiling::P23, &code(7, "100"), 1).unwrap();
    assert_eq!(set.entries.len(), 9);
    let tail = &set.entries[7..];
    assert!(tail.iter().all(|e| matches!(e, Neighbor::Strip { shift: Shift::Next, .. })), "{tail:?}");
}

#[test]
fn bottom_up_examples() {
    assert_eq!(numbers(&path_bottom_up(&code(5, "102")).unwrap()), vec![1, 4, 10]);
    assert_eq!(numbers(&path_bottom_up(&code(5, "1")).unwrap()), vec![1]);
    assert_eq!(numbers(&path_bottom_up(&code(5, "111")).unwrap()), vec![1, 4, 12]);
}

#[test]
fn top_down_examples() {
    let trace = path_top_down(&code(5, "102")).unwrap();
    assert_eq!(numbers(&trace), vec![1, 4, 10]);
    let kinds: Vec<(Status, NodeType)> = trace.steps.iter().map(|s| (s.status(), s.node_type)).collect();
    assert_eq!(kinds, vec![(Status::White, NodeType::W1), (Status::Black, NodeType::B2)]);
    let ones = code(5, "111111");
    assert_eq!(numbers(&path_top_down(&ones).unwrap()), numbers(&path_bottom_up(&ones).unwrap()));
    assert!(path_top_down(&ones).unwrap().steps.iter().all(|s| s.node_type == NodeType::W1));
    assert!(path_top_down(&code(5, "1")).unwrap().steps.is_empty());
}

#[test]
fn black_path_examples() {
    assert_eq!(path_black(&code(5, "21")).unwrap().level(), 2);
    assert_eq!(numbers(&path_black(&code(5, "21")).unwrap()), vec![1, 3, 7]);
    assert!(path_black(&code(5, "1")).unwrap().steps.is_empty());
    assert_eq!(numbers(&path_black(&code(5, "100")).unwrap()), vec![1, 3, 8]);
}

#[test]
fn strip_path_examples() {
    assert_eq!(numbers(&path_via_strips(&code(5, "100")).unwrap()), vec![1, 3, 8]);
    assert_eq!(numbers(&path_via_strips(&code(5, "1")).unwrap()), vec![1]);
    assert_eq!(numbers(&path_via_strips(&code(5, "111")).unwrap()), vec![1, 4, 12]);
}

#[test]
fn strip_location_round_trips() {
    for p in [5, 7, 9] {
        let g = grade(p);
        for n in 1..3000u64 {
            let location = locate_strip(g, &BigUint::from(n));
            assert_eq!(strip_to_white_number(g, location.strip, &location.black_number), BigUint::from(n));
        }
    }
    // Node 4 = M_1 leads strip 1.
    let location = locate_strip(grade(5), &BigUint::from(4u32));
    assert_eq!((location.strip, location.black_number), (1, BigUint::from(1u32)));
}

#[test]
fn path_algorithms_agree_on_long_codes() {
    let g = grade(7);
    for c in sample_codes(g, 60, 40, 3, Execution::Sequential) {
        let expected = path_bottom_up(&c).unwrap().numbers();
        assert_eq!(path_top_down(&c).unwrap().numbers(), expected);
        assert_eq!(path_via_strips(&c).unwrap().numbers(), expected);
    }
}

#[test]
fn top_down_is_linear_and_bottom_up_quadratic() {
    for p in [5, 7, 9] {
        let g = grade(p);
        for k in [100usize, 400] {
            let ones = MetallicCode::new(g, vec![1; k]).unwrap();
            assert!(path_bottom_up(&ones).unwrap().digit_visits >= (k * k / 4) as u64);
            assert!(path_top_down(&ones).unwrap().digit_visits <= 16 * k as u64);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(p as u64);
        for len in [50, 300] {
            let c = random_code(g, len, &mut rng);
            assert!(path_top_down(&c).unwrap().digit_visits <= 16 * len as u64);
            assert!(path_black(&c).unwrap().digit_visits <= 16 * len as u64);
        }
    }
}

#[test]
fn every_code_below_a_bound_has_a_consistent_father() {
    let g = grade(6);
    for n in 2..2000u64 {
        let c = encode_u64(g, n);
        let f = father(&c).unwrap();
        let up = path_top_down(&c).unwrap().numbers();
        assert_eq!(f.value(), up[up.len() - 2], "n={n}");
    }
}

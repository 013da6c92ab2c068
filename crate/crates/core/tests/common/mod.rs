#![allow(dead_code)]

use std::collections::VecDeque;

use accbt::gridworld::Pos;
use accbt::{compile, Compiled, ImplKind, Node};

pub const SURVIVAL_SPEC: &str = include_str!("../../../../specs/survival.bt");
pub const GOLDEN_TREE: &str = include_str!("../golden/survival_tree.json");

pub fn survival() -> Compiled {
    compile(SURVIVAL_SPEC).expect("shipped spec compiles")
}

fn c(name: &str) -> Node {
    Node::condition(name)
}

fn a(name: &str, kind: ImplKind) -> Node {
    Node::action(name, kind)
}

fn seq(children: Vec<Node>) -> Node {
    Node::sequence(children).unwrap()
}

fn fb(children: Vec<Node>) -> Node {
    Node::fallback(children).unwrap()
}

/// The survival tree written out by hand.
pub fn expected_survival_tree() -> Node {
    use ImplKind::{Learned, Scripted};
    let get_sword =
        fb(vec![c("Has sword"), seq(vec![c("Has materials"), c("Has crafting table"), a("Craft sword", Scripted)])]);
    let close_to_cow = fb(vec![
        c("Is close to cow"),
        seq(vec![fb(vec![c("Can see cow"), seq(vec![a("Search for cow", Scripted)])]), a("Chase cow", Learned)]),
    ]);
    let food = fb(vec![
        c("Has food"),
        seq(vec![c("Is close to apple"), a("Pick Apple", Scripted)]),
        seq(vec![get_sword, close_to_cow, a("Kill Cow", Scripted)]),
    ]);
    seq(vec![
        fb(vec![c("Safe from fire"), seq(vec![a("Escape from fire", Scripted)])]),
        fb(vec![c("Safe from hostiles"), seq(vec![a("Defeat hostile", Learned)])]),
        fb(vec![c("Not hungry"), seq(vec![food, a("Eat", Scripted)])]),
    ])
}

/// Fewest 4-neighbour moves from `from` to any cell within Chebyshev 1 of
/// `cow` on an empty `size`x`size` grid; the cow cell itself is blocked.
pub fn bfs_to_cow(size: i32, from: Pos, cow: Pos) -> Option<usize> {
    let idx = |p: Pos| (p.y * size + p.x) as usize;
    let mut dist = vec![usize::MAX; (size * size) as usize];
    let mut queue = VecDeque::from([from]);
    dist[idx(from)] = 0;
    while let Some(p) = queue.pop_front() {
        let d = dist[idx(p)];
        if (p.x - cow.x).abs().max((p.y - cow.y).abs()) <= 1 {
            return Some(d);
        }
        for (dx, dy) in [(0, -1), (0, 1), (1, 0), (-1, 0)] {
            let n = Pos::new(p.x + dx, p.y + dy);
            if n.x < 0 || n.y < 0 || n.x >= size || n.y >= size || n == cow || dist[idx(n)] != usize::MAX {
                continue;
            }
            dist[idx(n)] = d + 1;
            queue.push_back(n);
        }
    }
    None
}

use serde::{Deserialize, Serialize};

use super::config::Rules;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Pos {
    pub x: i32,
    pub y: i32,
}

impl Pos {
    pub const fn new(x: i32, y: i32) -> Self {
        Pos { x, y }
    }

    pub fn chebyshev(self, o: Pos) -> i32 {
        (self.x - o.x).abs().max((self.y - o.y).abs())
    }

    pub fn manhattan(self, o: Pos) -> i32 {
        (self.x - o.x).abs() + (self.y - o.y).abs()
    }

    pub fn offset(self, dx: i32, dy: i32) -> Pos {
        Pos { x: self.x + dx, y: self.y + dy }
    }
}

/// Inclusive cell box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rect {
    pub x0: i32,
    pub y0: i32,
    pub x1: i32,
    pub y1: i32,
}

impl Rect {
    pub const fn new(x0: i32, y0: i32, x1: i32, y1: i32) -> Self {
        Rect { x0, y0, x1, y1 }
    }

    pub fn contains(&self, p: Pos) -> bool {
        (self.x0..=self.x1).contains(&p.x) && (self.y0..=self.y1).contains(&p.y)
    }

    /// Cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = Pos> + '_ {
        (self.y0..=self.y1).flat_map(move |y| (self.x0..=self.x1).map(move |x| Pos { x, y }))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Agent {
    pub pos: Pos,
    pub hp: u32,
    pub hungry: bool,
    pub alive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Inventory {
    pub food: u32,
    pub sword: bool,
    pub materials: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cow {
    pub pos: Pos,
    pub hp: u32,
    pub alive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hostile {
    pub pos: Pos,
    pub hp: u32,
    pub alive: bool,
    pub aggro: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Apple {
    pub pos: Pos,
    pub present: bool,
}

/// Full MDP state. `fire` is sorted and static for a mission.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorldState {
    pub rules: Rules,
    pub fire: Vec<Pos>,
    pub agent: Agent,
    pub inventory: Inventory,
    pub cow: Cow,
    /// Cells the cow may wander in.
    pub pasture: Rect,
    pub hostile: Hostile,
    pub crafting_table: Pos,
    pub apple: Apple,
    pub t: u64,
}

impl WorldState {
    pub fn in_bounds(&self, p: Pos) -> bool {
        p.x >= 0 && p.y >= 0 && p.x < self.rules.width && p.y < self.rules.height
    }

    pub fn is_fire(&self, p: Pos) -> bool {
        self.fire.binary_search(&p).is_ok()
    }

    /// Cell blocked by a living creature.
    pub fn occupied(&self, p: Pos) -> bool {
        (self.agent.alive && self.agent.pos == p)
            || (self.cow.alive && self.cow.pos == p)
            || (self.hostile.alive && self.hostile.pos == p)
    }

    /// Nearest fire cell by squared Euclidean distance, first in sort order on ties.
    pub fn nearest_fire(&self, from: Pos) -> Option<Pos> {
        self.fire.iter().copied().min_by_key(|f| {
            let (dx, dy) = (f.x - from.x, f.y - from.y);
            dx * dx + dy * dy
        })
    }

    /// Fire cells among the 8 neighbours of `p`.
    pub fn fire_around(&self, p: Pos) -> usize {
        (-1..=1)
            .flat_map(|dy| (-1..=1).map(move |dx| (dx, dy)))
            .filter(|&(dx, dy)| (dx, dy) != (0, 0) && self.is_fire(p.offset(dx, dy)))
            .count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("state serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Checks the documented state invariants.
    pub fn check_invariants(&self) -> Result<(), String> {
        let mut positions = vec![("agent", self.agent.pos), ("cow", self.cow.pos), ("table", self.crafting_table)];
        positions.push(("hostile", self.hostile.pos));
        positions.push(("apple", self.apple.pos));
        for (what, p) in positions {
            if !self.in_bounds(p) {
                return Err(format!("{what} at {p:?} out of bounds"));
            }
        }
        if self.agent.alive != (self.agent.hp > 0) {
            return Err("agent alive flag disagrees with hp".into());
        }
        if self.hostile.alive != (self.hostile.hp > 0) {
            return Err("hostile alive flag disagrees with hp".into());
        }
        if self.agent.hp > self.rules.agent_max_hp || self.hostile.hp > self.rules.hostile_max_hp {
            return Err("hp above maximum".into());
        }
        Ok(())
    }
}

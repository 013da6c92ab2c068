//! Environment constants and scenario layouts.
//!
//! None of these numbers come from an external reference; they were chosen
//! so the two scenarios show the intended contrast (a quick fire fix versus
//! a costly hostile fight).

use serde::{Deserialize, Serialize};

use super::state::{Pos, Rect};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rules {
    pub width: i32,
    pub height: i32,
    pub agent_max_hp: u32,
    pub hostile_max_hp: u32,
    pub cow_max_hp: u32,
    pub sword_damage: u32,
    pub unarmed_damage: u32,
    pub hostile_damage: u32,
    pub fire_damage: u32,
    /// Hostile aggro radius; also the "Safe from hostiles" threshold.
    pub aggro_radius: i32,
    pub deaggro_radius: i32,
    pub sight_radius: i32,
    pub close_radius: i32,
    pub sword_break_prob: f64,
    pub cow_move_prob: f64,
}

impl Default for Rules {
    fn default() -> Self {
        Rules {
            width: 12,
            height: 12,
            agent_max_hp: 20,
            hostile_max_hp: 6,
            cow_max_hp: 2,
            sword_damage: 2,
            unarmed_damage: 1,
            hostile_damage: 1,
            fire_damage: 2,
            aggro_radius: 3,
            deaggro_radius: 6,
            sight_radius: 6,
            close_radius: 1,
            sword_break_prob: 0.02,
            cow_move_prob: 0.5,
        }
    }
}

/// Spawn geometry of one scenario. Positions are jittered inside the boxes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioLayout {
    pub id: u8,
    pub name: String,
    pub fire: Vec<Pos>,
    pub agent_box: Rect,
    pub hostile_alive: bool,
    pub hostile_box: Rect,
    /// Exact Chebyshev distance from the agent's spawn, when set.
    pub hostile_distance: Option<i32>,
    /// Spawn box and wandering area of the cow.
    pub cow_box: Rect,
    pub crafting_table: Pos,
    pub apple: Option<Pos>,
    pub hungry: bool,
    pub food: u32,
    pub sword: bool,
    pub materials: bool,
}

impl ScenarioLayout {
    /// Not hungry, three cells from a hostile across a two-row fire band.
    pub fn scenario1() -> Self {
        ScenarioLayout {
            id: 1,
            name: "near hostile, not hungry".into(),
            fire: (0..=7).flat_map(|x| [Pos::new(x, 9), Pos::new(x, 10)]).collect(),
            agent_box: Rect::new(6, 11, 7, 11),
            hostile_alive: true,
            hostile_box: Rect::new(0, 8, 11, 8),
            hostile_distance: Some(3),
            cow_box: Rect::new(8, 1, 10, 3),
            crafting_table: Pos::new(0, 11),
            apple: None,
            hungry: false,
            food: 0,
            sword: true,
            materials: false,
        }
    }

    /// Hungry, hostile out of range, off fire.
    pub fn scenario2() -> Self {
        ScenarioLayout {
            id: 2,
            name: "hungry, hostile out of range".into(),
            fire: vec![
                Pos::new(4, 9),
                Pos::new(5, 9),
                Pos::new(6, 9),
                Pos::new(7, 9),
                Pos::new(5, 10),
                Pos::new(6, 10),
                Pos::new(5, 11),
                Pos::new(6, 11),
            ],
            agent_box: Rect::new(1, 6, 2, 8),
            hostile_alive: true,
            hostile_box: Rect::new(4, 1, 7, 3),
            hostile_distance: Some(5),
            cow_box: Rect::new(9, 6, 10, 8),
            crafting_table: Pos::new(0, 0),
            apple: None,
            hungry: true,
            food: 0,
            sword: true,
            materials: false,
        }
    }

    /// Hazard-free field with a cow fixed at the centre.
    pub fn open_field(size: i32) -> Self {
        let c = size / 2;
        ScenarioLayout {
            id: 0,
            name: format!("open field {size}x{size}"),
            fire: Vec::new(),
            agent_box: Rect::new(0, 0, size - 1, size - 1),
            hostile_alive: false,
            hostile_box: Rect::new(0, 0, 0, 0),
            hostile_distance: None,
            cow_box: Rect::new(c, c, c, c),
            crafting_table: Pos::new(0, 0),
            apple: None,
            hungry: true,
            food: 0,
            sword: true,
            materials: false,
        }
    }
}

/// Environment configuration file contents.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridConfig {
    pub rules: Rules,
    pub scenarios: Vec<ScenarioLayout>,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            rules: Rules::default(),
            scenarios: vec![ScenarioLayout::scenario1(), ScenarioLayout::scenario2()],
        }
    }
}

impl GridConfig {
    /// Hazard-free square grid with a static cow.
    pub fn open_field(size: i32) -> Self {
        let rules = Rules { width: size, height: size, cow_move_prob: 0.0, ..Rules::default() };
        GridConfig { rules, scenarios: vec![ScenarioLayout::open_field(size)] }
    }

    pub fn layout(&self, id: u8) -> Option<&ScenarioLayout> {
        self.scenarios.iter().find(|s| s.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

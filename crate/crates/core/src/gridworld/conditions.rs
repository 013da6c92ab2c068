use super::state::WorldState;
use super::GridError;
use crate::names::normalize;

/// Conditions the environment can evaluate.
pub const CONDITIONS: [&str; 10] = [
    "Safe from fire",
    "Safe from hostiles",
    "Not hungry",
    "Has food",
    "Is close to cow",
    "Can see cow",
    "Is close to apple",
    "Has sword",
    "Has materials",
    "Has crafting table",
];

pub fn condition(name: &str, s: &WorldState) -> Result<bool, GridError> {
    let me = s.agent.pos;
    let r = &s.rules;
    Ok(match normalize(name).as_str() {
        "safe from fire" => !s.is_fire(me),
        "safe from hostiles" => !s.hostile.alive || s.hostile.pos.chebyshev(me) > r.aggro_radius,
        "not hungry" => !s.agent.hungry,
        "has food" => s.inventory.food >= 1,
        "is close to cow" => s.cow.alive && s.cow.pos.chebyshev(me) <= r.close_radius,
        "can see cow" => s.cow.alive && s.cow.pos.chebyshev(me) <= r.sight_radius,
        "is close to apple" => s.apple.present && s.apple.pos.chebyshev(me) <= r.close_radius,
        "has sword" => s.inventory.sword,
        "has materials" => s.inventory.materials,
        "has crafting table" => s.crafting_table.chebyshev(me) <= r.close_radius,
        _ => return Err(GridError::UnknownCondition(name.to_string())),
    })
}

use super::{BtError, Node, NodeKind, Status};

/// Resolves leaf ids against a state.
///
/// Conditions are binary. Action status comes from the binding as well; the
/// usual convention is Success on the postcondition, Failure on a broken
/// precondition, Running otherwise.
pub trait Bindings<S: ?Sized> {
    fn condition(&self, name: &str, state: &S) -> Result<bool, BtError>;
    fn action_status(&self, name: &str, state: &S) -> Result<Status, BtError>;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TickResult {
    pub status: Status,
    /// Set iff the tick ended at an action leaf returning Running.
    pub executing_action: Option<String>,
    /// Root-to-leaf path to the leaf that decided the result.
    pub visited_path: Vec<u32>,
}

pub fn tick<S, B>(root: &Node, state: &S, bindings: &B) -> Result<TickResult, BtError>
where
    S: ?Sized,
    B: Bindings<S> + ?Sized,
{
    let mut path = Vec::new();
    let (status, action) = eval(root, state, bindings, &mut path)?;
    Ok(TickResult { status, executing_action: action.map(str::to_owned), visited_path: path })
}

fn eval<'t, S, B>(
    node: &'t Node,
    state: &S,
    bindings: &B,
    path: &mut Vec<u32>,
) -> Result<(Status, Option<&'t str>), BtError>
where
    S: ?Sized,
    B: Bindings<S> + ?Sized,
{
    path.push(node.id);
    match &node.kind {
        NodeKind::Condition { name } => {
            let ok = bindings.condition(name, state)?;
            Ok((if ok { Status::Success } else { Status::Failure }, None))
        }
        NodeKind::Action { name, .. } => {
            let status = bindings.action_status(name, state)?;
            let action = (status == Status::Running).then_some(name.as_str());
            Ok((status, action))
        }
        NodeKind::Sequence { children } => composite(children, Status::Success, node.id, state, bindings, path),
        NodeKind::Fallback { children } => composite(children, Status::Failure, node.id, state, bindings, path),
    }
}

/// Runs children left to right, moving on while a child returns `pass`.
fn composite<'t, S, B>(
    children: &'t [Node],
    pass: Status,
    id: u32,
    state: &S,
    bindings: &B,
    path: &mut Vec<u32>,
) -> Result<(Status, Option<&'t str>), BtError>
where
    S: ?Sized,
    B: Bindings<S> + ?Sized,
{
    let depth = path.len();
    let mut last = Err(BtError::EmptyComposite { id: Some(id) });
    for child in children {
        path.truncate(depth);
        let r = eval(child, state, bindings, path)?;
        if r.0 != pass {
            return Ok(r);
        }
        last = Ok(r);
    }
    last
}

/// Partition of a state set by root status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Regions<S> {
    pub running: Vec<S>,
    pub success: Vec<S>,
    pub failure: Vec<S>,
}

pub fn regions<S, B, I>(root: &Node, states: I, bindings: &B) -> Result<Regions<S>, BtError>
where
    B: Bindings<S> + ?Sized,
    I: IntoIterator<Item = S>,
{
    let mut out = Regions { running: Vec::new(), success: Vec::new(), failure: Vec::new() };
    for s in states {
        match tick(root, &s, bindings)?.status {
            Status::Running => out.running.push(s),
            Status::Success => out.success.push(s),
            Status::Failure => out.failure.push(s),
        }
    }
    Ok(out)
}

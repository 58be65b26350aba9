/// Tarjan's strongly connected components.
///
/// Components come out in reverse topological order of the condensation:
/// every edge between distinct components points from a later component to
/// an earlier one.
pub(crate) fn tarjan(adjacency: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adjacency.len();
    let mut state = State {
        counter: 0,
        index: vec![None; n],
        low: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        components: Vec::new(),
    };
    for v in 0..n {
        if state.index[v].is_none() {
            strong_connect(v, adjacency, &mut state);
        }
    }
    state.components
}

struct State {
    counter: usize,
    index: Vec<Option<usize>>,
    low: Vec<usize>,
    on_stack: Vec<bool>,
    stack: Vec<usize>,
    components: Vec<Vec<usize>>,
}

fn strong_connect(v: usize, adjacency: &[Vec<usize>], state: &mut State) {
    state.index[v] = Some(state.counter);
    state.low[v] = state.counter;
    state.counter += 1;
    state.stack.push(v);
    state.on_stack[v] = true;

    for &w in &adjacency[v] {
        match state.index[w] {
            None => {
                strong_connect(w, adjacency, state);
                state.low[v] = state.low[v].min(state.low[w]);
            }
            Some(iw) if state.on_stack[w] => state.low[v] = state.low[v].min(iw),
            Some(_) => {}
        }
    }

    if Some(state.low[v]) == state.index[v] {
        let mut component = Vec::new();
        loop {
            let w = state.stack.pop().expect("tarjan stack underflow");
            state.on_stack[w] = false;
            component.push(w);
            if w == v {
                break;
            }
        }
        component.sort_unstable();
        state.components.push(component);
    }
}

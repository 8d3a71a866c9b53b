use semcom_core::TaskId;

use crate::error::EnvError;
use crate::scenario::Scenario;

/// Exact expected episode length (in slots) for `task` when every slot
/// transmits a perfect description, via absorbing-chain analysis of the
/// perfect-regime matrix restricted to the task's events.
///
/// Solves `(I - Q) t = 1` for the expected transition counts `t`, where `Q`
/// is the restriction to the task's non-final events; the length adds one
/// for the initial slot.
pub fn expected_perfect_length(scenario: &Scenario, task: TaskId) -> Result<f64, EnvError> {
    let task = scenario.task(task)?;
    let mut states = vec![task.initial_event];
    states.extend(task.intermediary_chain.iter().copied());
    let m = states.len();
    let index_of = |id: semcom_core::EventId| states.iter().position(|&s| s == id);

    // Reachability of the final event under the perfect regime.
    {
        let mut reached_final = false;
        let mut visited = vec![false; m];
        let mut queue = vec![0usize];
        visited[0] = true;
        while let Some(i) = queue.pop() {
            let row = scenario.transitions.perfect_row(states[i]);
            for (j, &p) in row.iter().enumerate() {
                if p <= 0.0 {
                    continue;
                }
                let id = semcom_core::EventId(j as u32);
                if id == task.final_event {
                    reached_final = true;
                } else if let Some(s) = index_of(id) {
                    if !visited[s] {
                        visited[s] = true;
                        queue.push(s);
                    }
                }
            }
        }
        if !reached_final {
            return Err(EnvError::NonAbsorbing(task.id));
        }
    }

    // Dense (I - Q) t = 1 via Gaussian elimination with partial pivoting;
    // the systems are tiny (one row per chain event).
    let mut a = vec![vec![0.0f64; m + 1]; m];
    for (i, &state) in states.iter().enumerate() {
        let row = scenario.transitions.perfect_row(state);
        for (j, &other) in states.iter().enumerate() {
            let q = row[other.index()];
            a[i][j] = if i == j { 1.0 - q } else { -q };
        }
        a[i][m] = 1.0;
    }
    for col in 0..m {
        let pivot = (col..m)
            .max_by(|&x, &y| a[x][col].abs().partial_cmp(&a[y][col].abs()).unwrap())
            .unwrap();
        if a[pivot][col].abs() < 1e-12 {
            return Err(EnvError::NonAbsorbing(task.id));
        }
        a.swap(col, pivot);
        let lead = a[col][col];
        for entry in &mut a[col] {
            *entry /= lead;
        }
        for r in 0..m {
            if r != col && a[r][col] != 0.0 {
                let factor = a[r][col];
                for c in col..=m {
                    a[r][c] -= factor * a[col][c];
                }
            }
        }
    }

    let expected_transitions = a[0][m];
    Ok(expected_transitions + 1.0)
}

use semcom_core::EventKind;

use crate::hyper::Hyperparams;

/// Per-slot reward: the description's cost is always paid; observing the
/// final event next earns the task reward, while falling back to an initial
/// event mid-episode (a restart, possible from any slot onward) costs the
/// delay penalty on top.
///
/// The three cases partition [`EventKind`], so for a fixed cost the ordering
/// is Final > Intermediary > Initial whenever `r_task` and `c_delay` are
/// positive.
pub fn reward(
    slot_cost: f64,
    next_event_kind: EventKind,
    slot_index: u32,
    hyper: &Hyperparams,
) -> f64 {
    debug_assert!(slot_cost > 0.0);
    match next_event_kind {
        EventKind::Final => -slot_cost + hyper.r_task,
        EventKind::Initial if slot_index >= 1 => -slot_cost - hyper.c_delay,
        EventKind::Initial => -slot_cost,
        EventKind::Intermediary => -slot_cost,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hyper() -> Hyperparams {
        Hyperparams { r_task: 10.0, c_delay: 5.0, ..Hyperparams::default() }
    }

    #[test]
    fn completion_earns_the_task_reward() {
        assert!((reward(1.75, EventKind::Final, 3, &hyper()) - 8.25).abs() < 1e-12);
    }

    #[test]
    fn intermediary_is_cost_only() {
        assert!((reward(1.75, EventKind::Intermediary, 2, &hyper()) + 1.75).abs() < 1e-12);
    }

    #[test]
    fn restart_pays_the_delay_penalty() {
        assert!((reward(1.75, EventKind::Initial, 1, &hyper()) + 6.75).abs() < 1e-12);
    }

    #[test]
    fn cases_are_ordered_for_fixed_cost() {
        let h = hyper();
        let cost = 3.0;
        let fin = reward(cost, EventKind::Final, 2, &h);
        let int = reward(cost, EventKind::Intermediary, 2, &h);
        let ini = reward(cost, EventKind::Initial, 2, &h);
        assert!(fin > int && int > ini);
    }
}

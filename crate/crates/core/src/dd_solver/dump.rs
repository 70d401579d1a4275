use std::fmt::Write as _;

use super::{DDState, HistoryRecord};
use crate::material_db::Database;
use crate::scalar::Real;

pub const HISTORY_HEADER: &str = "iter,penalty,changed,queries";
/// Vector fields are `;`-joined inside their column.
pub const STATE_HEADER: &str = "iter,point,j,eps,sig,eps_star,sig_star";

pub fn history_csv<T: Real>(history: &[HistoryRecord<T>]) -> String {
    let mut s = format!("{HISTORY_HEADER}\n");
    for h in history {
        let _ = writeln!(s, "{},{:.16e},{},{}", h.iter, h.penalty, h.changed, h.queries);
    }
    s
}

fn join<T: Real>(v: &[T]) -> String {
    v.iter().map(|x| format!("{x:.16e}")).collect::<Vec<_>>().join(";")
}

/// Rows for one state; pass `header = false` to append further iterations.
pub fn state_csv<T: Real>(state: &DDState<T>, db: &Database<T>, header: bool) -> String {
    let mut s = String::new();
    if header {
        s.push_str(STATE_HEADER);
        s.push('\n');
    }
    for (e, &j) in state.assignments.iter().enumerate() {
        let p = &db.points()[j];
        let _ = writeln!(
            s,
            "{},{e},{j},{},{},{},{}",
            state.iter,
            join(&state.eps_adm[e]),
            join(&state.sig_adm[e]),
            join(&p.eps),
            join(&p.sig)
        );
    }
    s
}

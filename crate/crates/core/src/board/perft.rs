use super::{Move, Position};

/// Leaf count of the legal move tree below `pos`.
pub fn perft(pos: &mut Position, depth: u32) -> u64 {
    if depth == 0 {
        return 1;
    }
    let moves = pos.generate_moves();
    if depth == 1 {
        return moves.len() as u64;
    }
    let mut nodes = 0;
    for m in moves {
        let undo = pos.make_move(m);
        nodes += perft(pos, depth - 1);
        pos.unmake_move(m, &undo);
    }
    nodes
}

/// Per-root-move breakdown of [`perft`], in generation order.
pub fn divide(pos: &mut Position, depth: u32) -> Vec<(Move, u64)> {
    if depth == 0 {
        return Vec::new();
    }
    pos.generate_moves()
        .into_iter()
        .map(|m| {
            let undo = pos.make_move(m);
            let n = perft(pos, depth - 1);
            pos.unmake_move(m, &undo);
            (m, n)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shallow_opening_counts() {
        let mut p = Position::startpos();
        assert_eq!(perft(&mut p, 0), 1);
        assert_eq!(perft(&mut p, 1), 20);
        assert_eq!(perft(&mut p, 2), 400);
        assert_eq!(perft(&mut p, 3), 8902);
    }

    #[test]
    fn divide_sums_to_perft() {
        let mut p = Position::startpos();
        let parts = divide(&mut p, 3);
        assert_eq!(parts.len(), 20);
        assert_eq!(parts.iter().map(|(_, n)| n).sum::<u64>(), 8902);
        assert!(divide(&mut p, 0).is_empty());
    }
}

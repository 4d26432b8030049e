//! Finds a second colorful set from a known one with one decision-oracle
//! call per pair.

use colorful::games::{clp_oracle, find_another_colorful, game_to_config, positivize, BimatrixGame, ClpOptions};
use colorful::generators::random_pairs;
use colorful::geometry::enumerate_pdcs;
use colorful::games::FacsInstance;

fn main() -> colorful::Result<()> {
    // pairs in general position: the known solution comes from enumeration
    let cfg = random_pairs(3, 20, 4)?;
    let all = enumerate_pdcs(&cfg, 1 << 20)?;
    println!("{} solutions in total", all.len());
    if let Some(given) = all.first() {
        let inst = FacsInstance::new(cfg, given.clone())?;
        let other = find_another_colorful(&inst, clp_oracle(ClpOptions::default()))?;
        println!("given {:?} -> other {:?} after {} oracle calls", given.picks(), other.selection.picks(), other.oracle_calls);
    }

    // the conic version built from a game, starting at the slack solution
    let game = positivize(&BimatrixGame::from_ints(&[&[2, 0], &[0, 1]], &[&[1, 0], &[0, 2]])?);
    let inst = game_to_config(&game)?;
    let mut calls = Vec::new();
    let mut oracle = clp_oracle(ClpOptions::default());
    let other = find_another_colorful(&inst, |c| {
        let answer = oracle(c)?;
        calls.push(answer);
        Ok(answer)
    })?;
    println!("game instance: slack set {:?} -> {:?}, oracle answers {calls:?}", inst.given.picks(), other.selection.picks());
    Ok(())
}

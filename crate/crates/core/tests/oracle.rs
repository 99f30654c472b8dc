mod common;

use setpart_core::partition::{BlockWord, SetPartition};

#[test]
fn library_agrees_with_brute_force_up_to_seven() {
    let cases = common::sweep(7).unwrap();
    // Ordered Bell numbers summed over n = 0..=7.
    assert_eq!(cases, 1 + 1 + 3 + 13 + 75 + 541 + 4683 + 47293);
}

#[test]
fn brute_force_reproduces_hand_values() {
    let o = common::Oracle::new(
        "1,4,8/2,9/3,7/5,6".parse::<SetPartition>().unwrap().blocks(),
    );
    assert_eq!((o.mak(), o.makp(), o.lmak(), o.lmakp()), (9, 10, 10, 9));
}

"""Independent reference for the closure computation.

Applies every relation to the two sets over and over until nothing
changes, then reports a conflict if the sets overlap.  Deliberately shares
no code with genadapt.coherence.
"""


def naive_closure(enabled, disabled, relations):
    """``relations`` are (trigger_mode, trigger, verb, target_mode, target) strings."""
    e, d = set(enabled), set(disabled)
    changed = True
    while changed:
        changed = False
        for trigger_mode, trigger, verb, _target_mode, target in relations:
            if trigger_mode == "Enable" and trigger in e:
                dest = e if verb == "Implies" else d
            elif trigger_mode == "Disable" and trigger in d:
                dest = d if verb == "Implies" else e
            else:
                continue
            if target not in dest:
                dest.add(target)
                changed = True
    if e & d:
        return "conflict"
    return frozenset(e), frozenset(d)

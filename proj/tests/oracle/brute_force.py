#!/usr/bin/env python3
"""Independent brute-force oracle for the fixture instances.

Enumerates every assignment of applicants to acceptable schools (or none),
filters by partial capacities, and evaluates the four blocking conditions
by direct set enumeration. Shares no code with the C++ library; its output
is frozen into the C++ test suites.
"""
import itertools
import json
import sys


def load(path):
    with open(path) as fh:
        return json.load(fh)


def school_rank(inst, s, subject):
    if "prefs" in s:
        lst = s["prefs"]
    else:
        lst = s["prefs_by_subject"].get(subject, [])
    return {a: i for i, a in enumerate(lst)}


def valid_matchings(inst):
    apps = inst["applicants"]
    options = [a["prefs"] + [None] for a in apps]
    schools = {s["id"]: s for s in inst["schools"]}
    for combo in itertools.product(*options):
        ok = True
        for sid, s in schools.items():
            for p in inst["subjects"]:
                used = sum(1 for a, c in zip(apps, combo) if c == sid and p in a["type"])
                if used > s["capacities"].get(p, 0):
                    ok = False
        if ok:
            yield {a["id"]: c for a, c in zip(apps, combo) if c is not None}


def blocking_pairs(inst, m):
    apps = {a["id"]: a for a in inst["applicants"]}
    schools = {s["id"]: s for s in inst["schools"]}
    out = []
    for a in inst["applicants"]:
        aid = a["id"]
        for sid in a["prefs"]:
            cur = m.get(aid)
            if cur == sid:
                continue
            if cur is not None and a["prefs"].index(cur) < a["prefs"].index(sid):
                continue
            s = schools[sid]
            p1, p2 = a["type"]
            members = [b for b, t in m.items() if t == sid]
            mp = {p: [b for b in members if p in apps[b]["type"]] for p in inst["subjects"]}
            under = {p: len(mp[p]) < s["capacities"].get(p, 0) for p in (p1, p2)}
            def beats(p, b):
                r = school_rank(inst, s, p)
                return r[aid] < r[b]
            conds = []
            if under[p1] and under[p2]:
                conds.append("i")
            if (under[p1] and any(beats(p2, b) for b in mp[p2])) or \
               (under[p2] and any(beats(p1, b) for b in mp[p1])):
                conds.append("ii")
            if any(set(apps[b]["type"]) == {p1, p2} and beats(p1, b) and beats(p2, b) for b in members):
                conds.append("iii")
            if any(b1 != b2 and beats(p1, b1) and beats(p2, b2) for b1 in mp[p1] for b2 in mp[p2]):
                conds.append("iv")
            if conds:
                out.append((aid, sid, conds))
    return out


def main():
    for path in sys.argv[1:]:
        inst = load(path)
        ms = list(valid_matchings(inst))
        counts = [len(blocking_pairs(inst, m)) for m in ms]
        stable = [m for m, c in zip(ms, counts) if c == 0]
        print(path)
        print("  valid matchings:", len(ms))
        print("  stable matchings:", len(stable))
        for m in stable:
            print("    ", sorted(m.items()))
        print("  min blocking pairs:", min(counts) if counts else 0)
        first_min = ms[counts.index(min(counts))] if counts else {}
        print("  first minimiser:", sorted(first_min.items()))


if __name__ == "__main__":
    main()

"""Throwaway calibration: search convention flags against the battery."""
import itertools
from fractions import Fraction as F

from montesinos import surfaces as S
from montesinos.edgepaths import (AxisPathSpec, EdgepathSystem, gamma_path,
                                  validate_system)
from montesinos.surfaces import (SaddleChoice, analyze, build_surface,
                                 saddle_layout)


def long_system(tangles):
    return EdgepathSystem(tuple(
        gamma_path(n, '-' if n > 0 else '+', F(0)) for n in tangles))


def inf_system(specs, m, alpha):
    return EdgepathSystem(tuple(
        AxisPathSpec(n, d, 0, 0, alpha, m).to_path() for n, d in specs))


def inf_route_reports(system, m, alpha, n=3):
    lay = saddle_layout(system, m)
    out = {}
    for routes in itertools.product(
            itertools.product((0, 1), repeat=alpha), repeat=n):
        bits = {}
        for b in range(n):
            e_last = len(lay[b]) - 1
            for k in range(alpha):
                bits[(b, e_last, k)] = routes[b][k]
        surf = build_surface(system, m, SaddleChoice(bits))
        rep = analyze(surf)
        splits = tuple(sb[-1] for sb in surf.splits)
        out[splits] = (rep.components, rep.orientable, rep.boundary_circles)
    return out


def run_battery():
    msgs = []
    ok = True

    def check(name, cond):
        nonlocal ok
        if not cond:
            ok = False
            msgs.append(name)

    # P1: all-White type II
    sw = long_system((3, 5, -7))
    r1 = analyze(build_surface(sw, 1))
    check('white m1', (r1.components, r1.orientable,
                       r1.boundary_circles) == (1, True, 1))
    for ch in [SaddleChoice.uniform(0), SaddleChoice.uniform(1),
               SaddleChoice({(0, 0, 1): 1, (1, 0, 0): 1, (2, 0, 2): 1})]:
        r3 = analyze(build_surface(sw, 3, ch))
        check('white m3', (r3.components, r3.orientable,
                           r3.boundary_circles) == (3, True, 3))

    # P2: White-White-Red type II
    swr = long_system((3, 5, -2))
    r1 = analyze(build_surface(swr, 1))
    check('wwr m1', (r1.components, r1.orientable,
                     r1.boundary_circles) == (1, False, 2))
    r3 = analyze(build_surface(swr, 3))
    check('wwr m3 nonor', not r3.orientable)
    check('wwr m3 bd', r3.boundary_circles >= 2)

    # P3: mono type III P(3,-5,2) cores (1,-1,0)
    sm = inf_system(((3, '+'), (-5, '-'), (2, '-')), 3, 1)
    reps = inf_route_reports(sm, 3, 1)
    check('mono a1 orient', all(v[1] for v in reps.values()))
    comps = {v[0] for v in reps.values()}
    check('mono a1 comps const', len(comps) == 1)
    msgs.append(f'mono m3 a1 comps={comps}')
    sm2 = inf_system(((3, '+'), (-5, '-'), (2, '-')), 3, 2)
    reps2 = inf_route_reports(sm2, 3, 2)
    msgs.append('mono m3 a2: ' + repr(sorted(set(reps2.values()))))

    # P4: quasi type III P(3,5,-7) cores (0,0,0)
    sq1 = inf_system(((3, '-'), (5, '-'), (-7, '+')), 1, 1)
    repsq1 = inf_route_reports(sq1, 1, 1)
    check('quasi m1 nonor', all(not v[1] for v in repsq1.values()))
    sq = inf_system(((3, '-'), (5, '-'), (-7, '+')), 3, 1)
    repsq = inf_route_reports(sq, 3, 1)
    orient = {k: v for k, v in repsq.items() if v[1]}
    msgs.append(f'quasi m3 a1: orientable splits={sorted(orient)} '
                f'reports={sorted(set(repsq.values()))}')
    sq2 = inf_system(((3, '-'), (5, '-'), (-7, '+')), 3, 2)
    repsq2 = inf_route_reports(sq2, 3, 2)
    orient2 = {k: v for k, v in repsq2.items() if v[1]}
    msgs.append(f'quasi m3 a2: orientable splits={sorted(orient2)} '
                f'reports={sorted(set(repsq2.values()))}')
    check('quasi m3 some orientable', bool(orient) or bool(orient2))
    for k, v in {**orient, **orient2}.items():
        mx = max(max(r, s) for r, s in k)
        check('quasi comps = m - max', v[0] == 3 - mx)

    # P5: Cor 2.7 on vertex-ended m=1 systems
    for tangles in [(3, 5, -7), (3, 5, -2), (2, 3, -5), (3, -5, 7),
                    (2, -3, 3)]:
        try:
            sysv = long_system(tangles)
            validate_system(sysv)
        except Exception:
            continue
        r = analyze(build_surface(sysv, 1))
        check(f'cor27 {tangles}',
              (r.components == 1 and r.orientable) ==
              (r.boundary_circles == 1))
    return ok, msgs


best = []
for combo in itertools.product((False, True), repeat=4):
    S.CONVENTIONS.update(zip(
        ("reverse_v_bottom", "reverse_finite_bottom",
         "reverse_iseg_top", "reverse_iseg_bottom"), combo))
    try:
        ok, msgs = run_battery()
    except Exception as e:
        print(combo, 'ERROR', type(e).__name__, e)
        continue
    print(combo, 'PASS' if ok else 'fail', '|', '; '.join(msgs))

#!/usr/bin/env python3
# Copyright 2026 The fimax Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Generates src/model/cart_double_pendulum_generated.cpp.

Derives the cart double-pendulum equations of motion from the Lagrangian with
the cart acceleration prescribed, solves for the joint accelerations and emits
the accelerations together with their first and second partial derivatives
with respect to

    z = (phi1, phi2, phi1dot, phi2dot, u, m1, m2, c)

Usage: python3 tools/gen_cart_model.py > src/model/cart_double_pendulum_generated.cpp
"""

import sympy as sp

phi1, phi2, w1, w2, u, m1, m2, c = sp.symbols("phi1 phi2 w1 w2 u m1 m2 c", real=True)
k1, k2, s1, s2, d, grav = sp.symbols("k1 k2 s1 s2 d grav", positive=True)
z = [phi1, phi2, w1, w2, u, m1, m2, c]

t = sp.symbols("t")
xf = sp.Function("x")(t)
a = sp.Function("a")(t)  # phi1
b = sp.Function("b")(t)  # phi2 (relative)

# Absolute angle of link 2 is a + b; angles measured from hanging down.
p1 = sp.Matrix([xf + s1 * sp.sin(a), -s1 * sp.cos(a)])
j2 = sp.Matrix([xf + d * sp.sin(a), -d * sp.cos(a)])
p2 = j2 + sp.Matrix([s2 * sp.sin(a + b), -s2 * sp.cos(a + b)])
v1 = p1.diff(t)
v2 = p2.diff(t)
T = (sp.Rational(1, 2) * m1 * v1.dot(v1) + sp.Rational(1, 2) * m1 * k1 * a.diff(t) ** 2
     + sp.Rational(1, 2) * m2 * v2.dot(v2)
     + sp.Rational(1, 2) * m2 * k2 * (a.diff(t) + b.diff(t)) ** 2)
V = m1 * grav * p1[1] + m2 * grav * p2[1]
L = T - V

# Viscous joint damping; c is given in g/s and converted here.
c_si = c / 1000
Q = [-c_si * a.diff(t), -c_si * b.diff(t)]

eqs = []
for q, Qi in zip([a, b], Q):
    eqs.append(sp.diff(L.diff(q.diff(t)), t) - L.diff(q) - Qi)

aa, bb = sp.symbols("aa bb")
subs_second = {a.diff(t, 2): aa, b.diff(t, 2): bb, xf.diff(t, 2): u}
subs_first = {a.diff(t): w1, b.diff(t): w2}
subs_zero = {a: phi1, b: phi2}
eqs = [e.subs(subs_second).subs(subs_first).subs(subs_zero) for e in eqs]
eqs = [e.subs(xf.diff(t), sp.Symbol("xdot")) for e in eqs]
eqs = [sp.expand(e) for e in eqs]
for e in eqs:
    assert sp.Symbol("xdot") not in e.free_symbols

Mmat = sp.Matrix([[e.coeff(aa) for e in eqs], [e.coeff(bb) for e in eqs]]).T
rhs = -sp.Matrix([e.subs({aa: 0, bb: 0}) for e in eqs])
Mmat = sp.simplify(Mmat)
rhs = sp.simplify(rhs)
det = sp.simplify(Mmat.det())
acc = [sp.simplify(Mmat[1, 1] * rhs[0] - Mmat[0, 1] * rhs[1]) / det,
       sp.simplify(Mmat[0, 0] * rhs[1] - Mmat[1, 0] * rhs[0]) / det]

def emit(fn_name, level):
    outputs, names = [], []
    for i in range(2):
        outputs.append(acc[i])
        names.append(f"acc[{i}]")
    if level >= 1:
        for i in range(2):
            for p in range(8):
                outputs.append(sp.diff(acc[i], z[p]))
                names.append(f"jac[{i}][{p}]")
    if level >= 2:
        for i in range(2):
            for p in range(8):
                for q in range(p, 8):
                    outputs.append(sp.diff(acc[i], z[p], z[q]))
                    names.append(f"hess[{i}][{p}][{q}]")
    repl, reduced = sp.cse(outputs, symbols=sp.numbered_symbols("t"), optimizations="basic")
    args = ["double acc[2]", "double jac[2][8]", "double hess[2][8][8]"][: level + 1]
    print()
    print(f"void {fn_name}(const CartPendulumConstants& k, const double z[8],")
    print("    " + ", ".join(args) + ") {")
    print("""  const double phi1 = z[0], phi2 = z[1], w1 = z[2], w2 = z[3], u = z[4];
  const double m1 = z[5], m2 = z[6], c = z[7];
  const double k1 = k.k1, k2 = k.k2, s1 = k.s1, s2 = k.s2, d = k.d;
  const double grav = k.gravity;
  (void)phi1; (void)phi2; (void)w1; (void)w2; (void)u; (void)m1; (void)m2; (void)c;
  (void)k1; (void)k2; (void)s1; (void)s2; (void)d; (void)grav;""")
    for sym, expr in repl:
        print(f"  const double {sym} = {sp.ccode(expr)};")
    for name, expr in zip(names, reduced):
        print(f"  {name} = {sp.ccode(expr)};")
    if level >= 2:
        print("""  for (int i = 0; i < 2; ++i) {
    for (int p = 0; p < 8; ++p) {
      for (int q = 0; q < p; ++q) hess[i][p][q] = hess[i][q][p];
    }
  }""")
    print("}")


print("""// Copyright 2026 The fimax Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Generated by tools/gen_cart_model.py. Do not edit.

#include <cmath>

#include "model/cart_double_pendulum_generated.hpp"

namespace fimax::detail {""")
emit("CartPendulumAccelerations", 0)
emit("CartPendulumAccelerations", 1)
emit("CartPendulumAccelerations", 2)
print()
print("}  // namespace fimax::detail")

// Copyright 2026 The fimax Authors
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

namespace fimax::detail {

void CartPendulumAccelerations(const CartPendulumConstants& k, const double z[8],
    double acc[2]) {
  const double phi1 = z[0], phi2 = z[1], w1 = z[2], w2 = z[3], u = z[4];
  const double m1 = z[5], m2 = z[6], c = z[7];
  const double k1 = k.k1, k2 = k.k2, s1 = k.s1, s2 = k.s2, d = k.d;
  const double grav = k.gravity;
  (void)phi1; (void)phi2; (void)w1; (void)w2; (void)u; (void)m1; (void)m2; (void)c;
  (void)k1; (void)k2; (void)s1; (void)s2; (void)d; (void)grav;
  const double t0 = d*s2;
  const double t1 = t0*cos(phi2);
  const double t2 = pow(s2, 2);
  const double t3 = k2 + t2;
  const double t4 = t1 + t3;
  const double t5 = sin(phi2);
  const double t6 = m2*t0*t5;
  const double t7 = 1000*t6;
  const double t8 = phi1 + phi2;
  const double t9 = 1000*u;
  const double t10 = m2*s2;
  const double t11 = 1000*grav;
  const double t12 = t10*t11*sin(t8) + t10*t9*cos(t8);
  const double t13 = c*w2 + t12 + t7*pow(w1, 2);
  const double t14 = m1*s1;
  const double t15 = t9*cos(phi1);
  const double t16 = t11*sin(phi1);
  const double t17 = d*m2;
  const double t18 = c*w1 + t12 + t14*t15 + t14*t16 + t15*t17 + t16*t17 - 2000*t6*w1*w2 - t7*pow(w2, 2);
  const double t19 = k1*m1;
  const double t20 = pow(d, 2);
  const double t21 = k2*m2;
  const double t22 = m1*pow(s1, 2);
  const double t23 = m2*t20;
  const double t24 = (1.0/1000.0)/(k2*t19 + k2*t22 + t19*t2 + t2*t22 + t2*t23*pow(t5, 2) + t20*t21);
  acc[0] = -t24*(-t13*t4 + t18*t3);
  acc[1] = t24*(m2*t18*t4 - t13*(2*m2*t1 + m2*t2 + t19 + t21 + t22 + t23))/m2;
}

void CartPendulumAccelerations(const CartPendulumConstants& k, const double z[8],
    double acc[2], double jac[2][8]) {
  const double phi1 = z[0], phi2 = z[1], w1 = z[2], w2 = z[3], u = z[4];
  const double m1 = z[5], m2 = z[6], c = z[7];
  const double k1 = k.k1, k2 = k.k2, s1 = k.s1, s2 = k.s2, d = k.d;
  const double grav = k.gravity;
  (void)phi1; (void)phi2; (void)w1; (void)w2; (void)u; (void)m1; (void)m2; (void)c;
  (void)k1; (void)k2; (void)s1; (void)s2; (void)d; (void)grav;
  const double t0 = cos(phi2);
  const double t1 = d*t0;
  const double t2 = s2*t1;
  const double t3 = pow(s2, 2);
  const double t4 = k2 + t3;
  const double t5 = t2 + t4;
  const double t6 = pow(w1, 2);
  const double t7 = sin(phi2);
  const double t8 = d*t7;
  const double t9 = t6*t8;
  const double t10 = m2*s2;
  const double t11 = 1000*t10;
  const double t12 = phi1 + phi2;
  const double t13 = cos(t12);
  const double t14 = t13*u;
  const double t15 = s2*t14;
  const double t16 = 1000*m2;
  const double t17 = sin(t12);
  const double t18 = grav*t17;
  const double t19 = s2*t18;
  const double t20 = t15*t16 + t16*t19;
  const double t21 = c*w2 + t11*t9 + t20;
  const double t22 = cos(phi1);
  const double t23 = t22*u;
  const double t24 = m1*s1;
  const double t25 = 1000*t24;
  const double t26 = sin(phi1);
  const double t27 = grav*t26;
  const double t28 = d*m2;
  const double t29 = 1000*t28;
  const double t30 = pow(w2, 2);
  const double t31 = t30*t8;
  const double t32 = 2000*t8;
  const double t33 = t10*t32;
  const double t34 = t33*w2;
  const double t35 = c*w1 - t11*t31 + t20 + t23*t25 + t23*t29 + t25*t27 + t27*t29 - t34*w1;
  const double t36 = -t21*t5 + t35*t4;
  const double t37 = k1*m1;
  const double t38 = pow(d, 2);
  const double t39 = k2*m2;
  const double t40 = pow(s1, 2);
  const double t41 = m1*t40;
  const double t42 = m2*t38;
  const double t43 = t3*pow(t7, 2);
  const double t44 = 1.0/(k2*t37 + k2*t41 + t3*t37 + t3*t41 + t38*t39 + t42*t43);
  const double t45 = (1.0/1000.0)*t44;
  const double t46 = t36*t45;
  const double t47 = 1.0/m2;
  const double t48 = 2*t2;
  const double t49 = m2*t3 + m2*t48 + t37 + t39 + t41 + t42;
  const double t50 = m2*t5;
  const double t51 = -t21*t49 + t35*t50;
  const double t52 = t47*t51;
  const double t53 = grav*t13;
  const double t54 = t17*u;
  const double t55 = t53 - t54;
  const double t56 = s2*t55;
  const double t57 = t22*t28;
  const double t58 = t22*t24;
  const double t59 = t26*u;
  const double t60 = grav*t57 + grav*t58 + t10*t53 - t10*t54 - t24*t59 - t28*t59;
  const double t61 = t1*t6 + t55;
  const double t62 = 2*w1;
  const double t63 = t62*w2;
  const double t64 = -grav*t13 + t1*t30 + t1*t63 + t54;
  const double t65 = s2*t44;
  const double t66 = t0*t65*t7;
  const double t67 = c - t34;
  const double t68 = t50*w1;
  const double t69 = w1 + w2;
  const double t70 = s2*t13;
  const double t71 = m2*t70 + t57 + t58;
  const double t72 = t23 + t27;
  const double t73 = k1*k2 + k1*t3 + k2*t40 + t3*t40;
  const double t74 = s2*(t14 + t18 + t9);
  const double t75 = s2*t8;
  const double t76 = d*t23 + d*t27 - s2*t31 + t15 + t19 - t63*t75;
  const double t77 = t38*(k2 + t43);
  const double t78 = t44*t47;
  const double t79 = (1.0/1000.0)*t21;
  const double t80 = t45*t51;
  acc[0] = -t46;
  acc[1] = t45*t52;
  jac[0][0] = -t44*(t4*t60 - t50*t56);
  jac[0][1] = s2*t45*(t16*t4*t64 - t21*t8 + 2*t36*t42*t66 + 1000*t50*t61);
  jac[0][2] = t45*(s2*t32*t68 - t4*t67);
  jac[0][3] = t45*(c*t5 + t33*t4*t69);
  jac[0][4] = t44*(-t4*t71 + t50*t70);
  jac[0][5] = t44*(-s1*t4*t72 + (1.0/1000.0)*t36*t44*t73);
  jac[0][6] = t44*(-t4*t76 + t46*t77 + t5*t74);
  jac[0][7] = -t45*(t4*w1 - t5*w2);
  jac[1][0] = t44*(-t49*t56 + t5*t60);
  jac[1][1] = t65*((1.0/500.0)*d*t21*t7 - 1.0/1000.0*t35*t8 - 1.0/500.0*t38*t51*t66 - t49*t61 - t50*t64);
  jac[1][2] = -t44*(t49*t62*t75 - 1.0/1000.0*t5*t67);
  jac[1][3] = -t78*((1.0/1000.0)*c*t49 + 2*pow(m2, 2)*t5*t69*t75);
  jac[1][4] = -t44*(t49*t70 - t5*t71);
  jac[1][5] = t78*(m2*s1*t5*t72 - t73*t80 - t79*(k1 + t40));
  jac[1][6] = t78*(m2*t5*t76 + (1.0/1000.0)*t35*t5 - t49*t74 - 1.0/1000.0*t52 - t77*t80 - t79*(t38 + t4 + t48));
  jac[1][7] = t45*t47*(-t49*w2 + t68);
}

void CartPendulumAccelerations(const CartPendulumConstants& k, const double z[8],
    double acc[2], double jac[2][8], double hess[2][8][8]) {
  const double phi1 = z[0], phi2 = z[1], w1 = z[2], w2 = z[3], u = z[4];
  const double m1 = z[5], m2 = z[6], c = z[7];
  const double k1 = k.k1, k2 = k.k2, s1 = k.s1, s2 = k.s2, d = k.d;
  const double grav = k.gravity;
  (void)phi1; (void)phi2; (void)w1; (void)w2; (void)u; (void)m1; (void)m2; (void)c;
  (void)k1; (void)k2; (void)s1; (void)s2; (void)d; (void)grav;
  const double t0 = cos(phi2);
  const double t1 = d*t0;
  const double t2 = s2*t1;
  const double t3 = pow(s2, 2);
  const double t4 = k2 + t3;
  const double t5 = t2 + t4;
  const double t6 = pow(w1, 2);
  const double t7 = sin(phi2);
  const double t8 = d*t7;
  const double t9 = t6*t8;
  const double t10 = m2*s2;
  const double t11 = 1000*t10;
  const double t12 = phi1 + phi2;
  const double t13 = cos(t12);
  const double t14 = t13*u;
  const double t15 = s2*t14;
  const double t16 = 1000*m2;
  const double t17 = sin(t12);
  const double t18 = grav*t17;
  const double t19 = s2*t18;
  const double t20 = t15*t16 + t16*t19;
  const double t21 = c*w2 + t11*t9 + t20;
  const double t22 = cos(phi1);
  const double t23 = t22*u;
  const double t24 = m1*s1;
  const double t25 = t23*t24;
  const double t26 = sin(phi1);
  const double t27 = grav*t26;
  const double t28 = t24*t27;
  const double t29 = d*t23;
  const double t30 = d*t27;
  const double t31 = pow(w2, 2);
  const double t32 = t31*t8;
  const double t33 = t10*t8;
  const double t34 = 2000*t33;
  const double t35 = t34*w2;
  const double t36 = c*w1 - t11*t32 + t16*t29 + t16*t30 + t20 + 1000*t25 + 1000*t28 - t35*w1;
  const double t37 = -t21*t5 + t36*t4;
  const double t38 = k1*m1;
  const double t39 = pow(d, 2);
  const double t40 = k2*m2;
  const double t41 = pow(s1, 2);
  const double t42 = m1*t41;
  const double t43 = m2*t39;
  const double t44 = pow(t7, 2);
  const double t45 = t3*t44;
  const double t46 = t43*t45;
  const double t47 = k2*t38 + k2*t42 + t3*t38 + t3*t42 + t39*t40 + t46;
  const double t48 = 1.0/t47;
  const double t49 = (1.0/1000.0)*t48;
  const double t50 = t37*t49;
  const double t51 = 1.0/m2;
  const double t52 = 2*t2;
  const double t53 = m2*t52;
  const double t54 = m2*t3 + t38 + t40 + t42 + t43 + t53;
  const double t55 = t36*t5;
  const double t56 = m2*t55 - t21*t54;
  const double t57 = t49*t56;
  const double t58 = t51*t57;
  const double t59 = grav*t13;
  const double t60 = t17*u;
  const double t61 = t59 - t60;
  const double t62 = s2*t5;
  const double t63 = t61*t62;
  const double t64 = grav*t22;
  const double t65 = d*m2;
  const double t66 = t26*u;
  const double t67 = t10*t59 - t10*t60 + t24*t64 - t24*t66 + t64*t65 - t65*t66;
  const double t68 = m2*t63 - t4*t67;
  const double t69 = 2*w2;
  const double t70 = t69*w1;
  const double t71 = -grav*t13 + t1*t31 + t1*t70 + t60;
  const double t72 = t16*t4;
  const double t73 = 2*t0;
  const double t74 = t7*t73;
  const double t75 = s2*t48;
  const double t76 = t43*t75;
  const double t77 = t37*t76;
  const double t78 = t21*t8;
  const double t79 = t1*t6 + t61;
  const double t80 = t5*t79;
  const double t81 = t16*t80 - t78;
  const double t82 = s2*t49;
  const double t83 = c - t35;
  const double t84 = t5*w1;
  const double t85 = m2*t84;
  const double t86 = 2000*s2;
  const double t87 = -t4*t83 + t8*t85*t86;
  const double t88 = t49*t87;
  const double t89 = w1 + w2;
  const double t90 = t4*t89;
  const double t91 = 2000*t90;
  const double t92 = c*t5 + t33*t91;
  const double t93 = t49*t92;
  const double t94 = s2*t13;
  const double t95 = m2*t94;
  const double t96 = d*t22;
  const double t97 = m2*t96 + t22*t24 + t95;
  const double t98 = t48*(-t4*t97 + t5*t95);
  const double t99 = t23 + t27;
  const double t100 = s1*t4;
  const double t101 = t100*t99;
  const double t102 = k1*k2 + k1*t3 + k2*t41 + t3*t41;
  const double t103 = k2 + t45;
  const double t104 = t103*t39;
  const double t105 = t14 + t18;
  const double t106 = t105 + t9;
  const double t107 = t106*t62;
  const double t108 = t70*t8;
  const double t109 = -s2*t108 - s2*t32 + t15 + t19 + t29 + t30;
  const double t110 = t109*t4;
  const double t111 = t107 - t110;
  const double t112 = t5*w2;
  const double t113 = -t112 + t4*w1;
  const double t114 = s2*t61;
  const double t115 = t114*t54 - t5*t67;
  const double t116 = m2*t5;
  const double t117 = t116*t71;
  const double t118 = t54*t79;
  const double t119 = t36*t8;
  const double t120 = (1.0/500.0)*t56;
  const double t121 = t39*t75;
  const double t122 = t120*t121;
  const double t123 = t0*t7;
  const double t124 = t5*t83;
  const double t125 = 2*s2;
  const double t126 = t54*w1;
  const double t127 = t126*t8;
  const double t128 = 2*t8;
  const double t129 = pow(m2, 2);
  const double t130 = t62*t89;
  const double t131 = t129*t130;
  const double t132 = c*t54;
  const double t133 = t48*t51;
  const double t134 = -t5*t97 + t54*t94;
  const double t135 = t134*t48;
  const double t136 = k1 + t41;
  const double t137 = t136*t21;
  const double t138 = t39 + t4 + t52;
  const double t139 = t138*t21;
  const double t140 = t106*t54;
  const double t141 = s2*t140;
  const double t142 = (1.0/1000.0)*t51;
  const double t143 = -t54*w2 + t85;
  const double t144 = t143*t51;
  const double t145 = t105*t5;
  const double t146 = m2*t15 + m2*t19 + m2*t29 + m2*t30 + t25 + t28;
  const double t147 = t114*t8;
  const double t148 = t121*t74;
  const double t149 = m2*t75;
  const double t150 = t17*t5;
  const double t151 = t10*t17 + t24*t26 + t26*t65;
  const double t152 = t64 - t66;
  const double t153 = t102*t48;
  const double t154 = d*t64 - d*t66 + s2*t59 - s2*t60;
  const double t155 = t104*t48;
  const double t156 = t1*t21;
  const double t157 = t108 - t14 - t18 + t32;
  const double t158 = t4*t71;
  const double t159 = t158*t16 + t81;
  const double t160 = 4*t48;
  const double t161 = t123*t3*t43;
  const double t162 = pow(t0, 2);
  const double t163 = t160*t162*t46 - t162 + t44;
  const double t164 = t44*w1;
  const double t165 = t4*w2;
  const double t166 = t48*t7;
  const double t167 = (1.0/500.0)*t166*t2;
  const double t168 = c*t7;
  const double t169 = s2*t74;
  const double t170 = t169*t43;
  const double t171 = (1.0/1000.0)*t102;
  const double t172 = (1.0/250.0)*t123;
  const double t173 = t102*t172;
  const double t174 = pow(t47, -2);
  const double t175 = s2*t174;
  const double t176 = s2*t106;
  const double t177 = t74*t76;
  const double t178 = t104*t49;
  const double t179 = (1.0/500.0)*t37;
  const double t180 = t121*t123;
  const double t181 = pow(d, 4);
  const double t182 = t174*t181;
  const double t183 = t8*t82;
  const double t184 = 2*m2;
  const double t185 = t184*t48*t62*t8;
  const double t186 = t128*t149*t4;
  const double t187 = t171*t174;
  const double t188 = t125*t7;
  const double t189 = d*t103;
  const double t190 = d*t48;
  const double t191 = t49*t5;
  const double t192 = t94 + t96;
  const double t193 = t153*t179;
  const double t194 = t102*t174;
  const double t195 = t104*t174;
  const double t196 = t105*t54;
  const double t197 = t17*t54;
  const double t198 = s1*t5;
  const double t199 = 1000*t118 + t119 - 2*t78;
  const double t200 = 1000*t117 + t199;
  const double t201 = -t124 + t127*t86;
  const double t202 = d*t75;
  const double t203 = 2000*t131*t8 + t132;
  const double t204 = s1*t99;
  const double t205 = t116*t204;
  const double t206 = -t137 + 1000*t205;
  const double t207 = t175*t56;
  const double t208 = t102*t49;
  const double t209 = 1000*t109*t116 - t139 - 1000*t141 + t55;
  const double t210 = -t185;
  const double t211 = t49*t51;
  const double t212 = t104*t120;
  const double t213 = (1.0/500.0)*t209;
  acc[0] = -t50;
  acc[1] = t58;
  jac[0][0] = t48*t68;
  jac[0][1] = t82*(t71*t72 + t74*t77 + t81);
  jac[0][2] = t88;
  jac[0][3] = t93;
  jac[0][4] = t98;
  jac[0][5] = t48*(-t101 + (1.0/1000.0)*t102*t37*t48);
  jac[0][6] = t48*(t104*t50 + t111);
  jac[0][7] = -t113*t49;
  jac[1][0] = -t115*t48;
  jac[1][1] = t75*((1.0/500.0)*d*t21*t7 - t117 - t118 - 1.0/1000.0*t119 - t122*t123);
  jac[1][2] = -t48*(-1.0/1000.0*t124 + t125*t127);
  jac[1][3] = -t133*(t128*t131 + (1.0/1000.0)*t132);
  jac[1][4] = -t135;
  jac[1][5] = t133*(m2*s1*t5*t99 - t102*t57 - 1.0/1000.0*t137);
  jac[1][6] = t133*(m2*t109*t5 - t104*t57 - 1.0/1000.0*t139 - t141 - t142*t56 + (1.0/1000.0)*t36*t5);
  jac[1][7] = t144*t49;
  hess[0][0][0] = -t48*(t10*t145 - t146*t4);
  hess[0][0][1] = -t149*(-t105*t4 + t145 + t147 + t148*t68);
  hess[0][0][2] = 0;
  hess[0][0][3] = 0;
  hess[0][0][4] = -t48*(t10*t150 - t151*t4);
  hess[0][0][5] = -t48*(t100*t152 + t153*t68);
  hess[0][0][6] = -t48*(t154*t4 + t155*t68 - t63);
  hess[0][0][7] = 0;
  hess[0][1][1] = -t82*(1000*t106*t116 + t156 + t157*t72 + t159*t160*t161 + 2*t163*t77 + t34*t79);
  hess[0][1][2] = -t65*t75*(d*t125*t164 - t165*t73 + t167*t87 - t73*t84);
  hess[0][1][3] = -d*t82*(-m2*t0*t91 + t166*t53*t92 + t168);
  hess[0][1][4] = -t149*(t150 + t169*t39*t98 - t17*t4 + t8*t94);
  hess[0][1][5] = -t175*(-t101*t170 + t159*t171 + t173*t77);
  hess[0][1][6] = -t75*(t10*t103*t172*t182*t37 + t111*t177 - t158 + t159*t178 + t176*t8 - t179*t180 - t80);
  hess[0][1][7] = t183*(t113*t48*t53 - w2);
  hess[0][2][2] = t185;
  hess[0][2][3] = t186;
  hess[0][2][4] = 0;
  hess[0][2][5] = -t187*t87;
  hess[0][2][6] = -t190*(-t188*(t165 + t84) + t189*t88);
  hess[0][2][7] = -t4*t49;
  hess[0][3][3] = t186;
  hess[0][3][4] = 0;
  hess[0][3][5] = -t187*t92;
  hess[0][3][6] = -t190*(-t188*t90 + t189*t93);
  hess[0][3][7] = t191;
  hess[0][4][4] = 0;
  hess[0][4][5] = -t48*(t100*t22 + t102*t98);
  hess[0][4][6] = -t48*(t104*t98 + t192*t4 - t5*t94);
  hess[0][4][7] = 0;
  hess[0][5][5] = t194*(2*t101 - t193);
  hess[0][5][6] = -t174*(-t101*t104 + t102*t111 + t104*t193);
  hess[0][5][7] = t113*t187;
  hess[0][6][6] = -t195*(2*t107 - 2*t110 + t155*t179);
  hess[0][6][7] = (1.0/1000.0)*t113*t195;
  hess[0][7][7] = 0;
  hess[1][0][0] = t48*(s2*t196 - t146*t5);
  hess[1][0][1] = -t75*(d*t67*t7 + m2*t105*t5 - t115*t177 - t147*t184 - t196);
  hess[1][0][2] = 0;
  hess[1][0][3] = 0;
  hess[1][0][4] = t48*(s2*t197 - t151*t5);
  hess[1][0][5] = -t48*(s2*t136*t61 - t115*t153 - t152*t198);
  hess[1][0][6] = -t48*(-t115*t155 - t115*t51 + t51*(m2*t114*t138 + t115 - t116*t154));
  hess[1][0][7] = 0;
  hess[1][1][1] = t75*(-1.0/1000.0*t1*t36 + t116*t157 + t122*t163 + t140 + (1.0/500.0)*t156 + (1.0/250.0)*t161*t200*t48 + 2*t33*t71 + 4*t33*t79);
  hess[1][1][2] = -t202*(m2*t112*t73 - m2*t167*t201 - 4*s2*t164*t65 + t126*t73 + (1.0/1000.0)*t7*t83);
  hess[1][1][3] = t202*(-t116*t73*t89 + t125*t44*t65*t89 + t167*t203 + (1.0/500.0)*t168);
  hess[1][1][4] = t75*(-m2*t150 + t128*t95 + t135*t170 + t197 - t8*t97);
  hess[1][1][5] = -t75*(t136*t79 - t173*t207*t39 + (1.0/500.0)*t180*t206 - t200*t208 + t204*t8);
  hess[1][1][6] = t82*(4*t103*t123*t181*t207 - t148*t209 + t155*t200 + t200*t51 - t51*(-t106*t34 + t109*t16*t8 + 2000*t117 + t138*t16*t79 + t199));
  hess[1][1][7] = -t183*(t143*t48*t52 - t69 + w1);
  hess[1][2][2] = -t128*t54*t75;
  hess[1][2][3] = t210;
  hess[1][2][4] = 0;
  hess[1][2][5] = -t48*(t125*t136*t8*w1 - t201*t208);
  hess[1][2][6] = t49*(t155*t201 + t201*t51 - t51*(t112*t34 + t138*t34*w1 + t201));
  hess[1][2][7] = t191;
  hess[1][3][3] = t210;
  hess[1][3][4] = 0;
  hess[1][3][5] = -t211*(c*t136 - t153*t203);
  hess[1][3][6] = -t133*((1.0/1000.0)*c*t138 + 4*m2*t130*t8 - t142*t203 - t178*t203);
  hess[1][3][7] = -t211*t54;
  hess[1][4][4] = 0;
  hess[1][4][5] = t48*(t102*t135 - t136*t94 + t198*t22);
  hess[1][4][6] = t48*(t104*t135 + t134*t51 - t51*(-t116*t192 + t134 + t138*t95));
  hess[1][4][7] = 0;
  hess[1][5][5] = t194*t51*(t120*t153 + (1.0/500.0)*t137 - 2*t205);
  hess[1][5][6] = -t133*(-t102*t58 + t136*t176 + t142*t206 + t178*t206 - t194*t212 - t198*t99 + t208*t209);
  hess[1][5][7] = -t211*(t136*w2 + t143*t153);
  hess[1][6][6] = t133*(pow(t103, 2)*t120*t182 + 2*t109*t5 + t120/t129 + t133*t212 - 2*t138*t176 - t155*t213 - t213*t51);
  hess[1][6][7] = -t211*(t138*w2 + t143*t155 + t144 - t84);
  hess[1][7][7] = 0;
  for (int i = 0; i < 2; ++i) {
    for (int p = 0; p < 8; ++p) {
      for (int q = 0; q < p; ++q) hess[i][p][q] = hess[i][q][p];
    }
  }
}

}  // namespace fimax::detail

import sympy as sp, math
exec(open('full_k2_closed_form.py').read().split("for vals in")[0])
def coeffs(vals):
    a1_,a2_,b1_,b2_,c1_,c2_,D1_,D2_,L_,k_,ph=vals
    den=b1_*c2_-b2_*c1_; ub=sp.nsimplify((a1_*c2_-a2_*c1_)/den); vb=sp.nsimplify((a2_*b1_-a1_*b2_)/den)
    kap=k_*sp.pi/L_; phi=lambda w: ph[0]+ph[1]*w+ph[2]*w**2+ph[3]*w**3; Lam=kap**2
    chik=((D1_*Lam+b1_*ub)*(D2_*Lam+c2_*vb)-b2_*c1_*ub*vb)/(b2_*Lam*phi(vb)*ub*vb); Q=-(D2_*Lam+c2_*vb)/(b2_*vb)
    c=sp.cos(t)
    u=ub+s*Q*c+s**2*(A0+A2*sp.cos(2*t))+s**3*P*c; v=vb+s*c+s**2*(B0+B2*sp.cos(2*t))+s**3*R*c
    chi=chik+s**2*K2; dx=lambda e: kap*sp.diff(e,t)
    E1=D1_*dx(dx(u))+chi*dx(u*phi(v)*dx(v))+(a1_-b1_*u-c1_*v)*u; E2=D2_*dx(dx(v))+(a2_-b2_*u-c2_*v)*v
    ser=lambda E,n: sp.expand(sp.diff(E,s,n).subs(s,0)/sp.factorial(n))
    proj=lambda e,m: sp.integrate(sp.expand(sp.expand_trig(e*sp.cos(m*t))),(t,0,2*sp.pi))/sp.pi
    sol3=sp.solve([proj(ser(E1,3),1),proj(ser(E2,3),1),Q*P+R],[P,R,K2],dict=True)[0]
    lhs=sp.expand(sol3[K2]*(k_**2*sp.pi**2*phi(vb)*ub)/(2*L_))
    # integrals: Iphi=A0 L, Ipsi=B0 L, Ip2=A2 L/2, Is2=B2 L/2
    return [sp.N(x) for x in (lhs.subs({A0:0,A2:0,B0:0,B2:0}), lhs.coeff(A0)/L_, lhs.coeff(B0)/L_, lhs.coeff(A2)*2/L_, lhs.coeff(B2)*2/L_)]
def closed_form_B(a1,a2,b1,b2,c1,c2,D1,D2,L,k,ph):
    den=b1*c2-b2*c1; ub=(a1*c2-a2*c1)/den; vb=(a2*b1-a1*b2)/den
    phi=ph[0]+ph[1]*vb+ph[2]*vb**2+ph[3]*vb**3; dphi=ph[1]+2*ph[2]*vb+3*ph[3]*vb**2; ddphi=2*ph[2]+6*ph[3]*vb
    Lam=(k*math.pi/L)**2; Q=-(D2*Lam+c2*vb)/(b2*vb)
    B0=-L/16*(2*dphi*Q+ub*ddphi)*(Q/(ub*phi)*Lam*D1+(b1*Q+c1)/phi)
    B1=(Q/(2*ub)+1/(2*vb))*Lam*D1-b1*Q/2+b1*ub/(2*vb)
    B2=(dphi*Q/(2*phi)+(b2*Q+2*c2)/(2*b2*vb))*Lam*D1-c1*Q/2+ub*dphi*(b1*Q+c1)/(2*phi)+b1*ub*(b2*Q+2*c2)/(2*b2*vb)
    B3=(1/(2*vb)-Q/(2*ub))*Lam*D1-(3*b1*Q+2*c1)/2+b1*ub/(2*vb)
    B4=((ub*dphi+2*phi*Q)/(2*ub*phi)*Q+(b2*Q+2*c2)/(2*b2*vb))*Lam*D1+b1*ub/(2*b2*vb)*(b2*Q+2*c2)+(ub*dphi+2*phi*Q)*(b1*Q+c1)/(2*phi)
    return B0,B1,B2,B3,B4
for vals in [(3,2,2,1,1,2,1,1,math.pi,1,(1,0,0,0)),(3,2,2,1,1,2,1,1,math.pi,2,(1,0.3,0.2,0.1)),(3,2,2,1,1,2,2,1,math.pi,1,(1,0.5,0,0))]:
    sv=tuple(sp.nsimplify(x) for x in vals[:8])+(sp.pi,vals[9],tuple(map(sp.nsimplify,vals[10])))
    print("true ",coeffs(sv)); print("printed",closed_form_B(*vals))
print("----")
for vals in [(3,2,3,1,1,2,1,1,math.pi,1,(1,0.5,0,0)),(3,2,3,1,0.5,2,1.5,0.7,2.0,1,(1,0.5,0.3,0))]:
    sv=tuple(sp.nsimplify(x) for x in vals[:9])+(vals[9],tuple(map(sp.nsimplify,vals[10])))
    tr=coeffs(sv); pb=closed_form_B(*vals)
    D2,b2,c2=vals[7],vals[3],vals[5]; den=vals[2]*c2-b2*vals[4]; vb=(vals[1]*vals[2]-vals[0]*b2)/den
    Q=-(D2*(math.pi/vals[8])**2+c2*vb)/(b2*vb)
    print("B4 diff",float(tr[4])-pb[4]," -c1Q/2=",-vals[4]*Q/2," -b1Q/4=",-vals[2]*Q/4, "B0",tr[0],pb[0])

import sympy as sp
s,t=sp.symbols('s t')
a1,a2,b1,b2,c1,c2,D1,D2,L,kk=sp.symbols('a1 a2 b1 b2 c1 c2 D1 D2 L k',positive=True)
p0,p1,p2=sp.symbols('p0 p1 p2')
A0,A2,B0,B2,P,R,K2,K1=sp.symbols('A0 A2 B0 B2 P R K2 K1')
def solve_K2(vals):
    a1_,a2_,b1_,b2_,c1_,c2_,D1_,D2_,L_,k_,ph=vals
    den=b1_*c2_-b2_*c1_
    ub=sp.Rational(a1_*c2_-a2_*c1_)/den if False else sp.nsimplify((a1_*c2_-a2_*c1_)/den)
    vb=sp.nsimplify((a2_*b1_-a1_*b2_)/den)
    kap=k_*sp.pi/L_
    phi=lambda w: ph[0]+ph[1]*w+ph[2]*w**2+ph[3]*w**3
    Lam=kap**2
    chik=((D1_*Lam+b1_*ub)*(D2_*Lam+c2_*vb)-b2_*c1_*ub*vb)/(b2_*Lam*phi(vb)*ub*vb)
    Q=-(D2_*Lam+c2_*vb)/(b2_*vb)
    c=sp.cos(t)
    # phi2, psi2 only enter via mode-k projection, use P cos t, R cos t as their mode-k parts (other modes irrelevant at this order)
    u=ub+s*Q*c+s**2*(A0+A2*sp.cos(2*t))+s**3*P*c
    v=vb+s*c+s**2*(B0+B2*sp.cos(2*t))+s**3*R*c
    chi=chik+s*K1+s**2*K2
    dx=lambda e: kap*sp.diff(e,t)
    E1=D1_*dx(dx(u))+chi*dx(u*phi(v)*dx(v))+(a1_-b1_*u-c1_*v)*u
    E2=D2_*dx(dx(v))+(a2_-b2_*u-c2_*v)*v
    ser=lambda E,n: sp.expand(sp.diff(E,s,n).subs(s,0)/sp.factorial(n))
    proj=lambda e,m: sp.integrate(sp.expand(sp.expand_trig(e*sp.cos(m*t))),(t,0,2*sp.pi))/sp.pi
    e12,e22=ser(E1,2),ser(E2,2)
    eqs=[proj(e12,0),proj(e12,2),proj(e22,0),proj(e22,2),proj(e12,1)]
    sol=sp.solve(eqs,[A0,A2,B0,B2,K1],dict=True)[0]
    e13,e23=ser(E1,3).subs(sol),ser(E2,3).subs(sol)
    eq3=[proj(e13,1),proj(e23,1),Q*P+R]
    sol3=sp.solve(eq3,[P,R,K2],dict=True)[0]
    return sp.N(sol3[K2]),sp.N(sol[K1]),sol,ub,vb,chik,Q
vals=(3,2,2,1,1,2,1,1,sp.pi,1,(1,0,0,0))
print(solve_K2(vals)[:2])
vals=(3,2,2,1,1,2,100,sp.Rational(1,100),sp.pi,1,(1,0,0,0))
print(solve_K2(vals)[:2])

"""Hand-written expressions in the fully written arrow syntax, used as a parser corpus."""

MAPS = [
    "{u->a,b<-v}-->{u->a=b<-v}",
    "{a<->b->c<->d}-->{a<->b=c=d}",
    "{a<->b->c}-->{a<->b=c}",
    "{a<->b<-c}-->{a<->b=c}",
    "{a<->b}-->{a=b}",
    "{o->c}-->{o=c}",
    "{o->c}-->{o<->c}",
    "{a<-v->v'<-x->w'<-w->b}-->{a<-v=v'=x=w'=w->b}",
    "{a<-v->x<-w->b}-->{a<-v=x=w->b}",
    "{a}-->{a<->b}",
    "{c}-->{o->c}",
    "{o}-->{o->c}",
    "{}-->{o}",
    "{v->a<-w->b}-->{v=a=w->b}",
    "{o->a<-u->c}-->{o=a=u->c}",
    "{u->x<-v}-->{u=x=v}",
    "{x,y}-->{x=y}",
    "{x<->y}-->{x=y}",
    "{x<->y->c}-->{x=y=c}",
    "{z<->x<->y->c}-->{z=x<->y=c}",
    "{z<->x<->y<-c}-->{z=x<->y=c}",
    "{a<-b->c}-->{a=b=c}",
]

SPACES = [
    "{}",
    "{o}",
    "{v}",
    "{a,b}",
    "{a->b}",
    "{a<->b}",
    "{a=b}",
    "{o->c}",
    "{u->a}",
    "{b<-v}",
    "{u->a,b<-v}",
    "{v->a<-w->b}",
    "{v=a=w->b}",
    "{a<-b->c}",
]

CLASSES = [
    "{ {o}-->{o->c} }^r_{<5}^lr",
    "{ {c}-->{o->c} }^l",
    "{ {x,y}-->{x=y} }^r",
    "{ {x<->y}-->{x=y} }^l",
    "{ {}-->{o} }^r",
    "{ {}-->{o} }^rrl",
    "{ {}-->{o} }^rll",
    "{ {x,y}-->{x=y} }^l",
    "{ {}-->{o} }^rl",
    "{ {}-->{o} }^rr",
    "{{x<->y->c}-->{x=y=c}}^l",
    "{ {z<->x<->y->c}-->{z=x<->y=c} }^l",
    "{{c}-->{o->c}}^lr",
    "{ {z<->x<->y<-c}-->{z=x<->y=c} }^l",
    "{ {u->a,b<-v}-->{u->a=b<-v}, {a<->b}-->{a=b}, {a<->b->c}-->{a<->b=c} }^lr",
    "{ {a<->b}-->{a=b}, {o->c}-->{o=c} }^lr",
]

# Abbreviated forms that leave out labels the domain already shows; rejected on purpose.
SHORTHAND = [
    "{u->a,b<-v}-->{a=b}",
    "{a<-b->c<-d->e}-->{b=c=d}",
]

#ifndef LQA_BUILTIN_DATA_HPP
#define LQA_BUILTIN_DATA_HPP

#include <string_view>

namespace lqa::data {

// Closed class list: determiners, conjunctions, prepositions. One entry per line.
inline constexpr std::string_view kStopwords = R"(a
an
the
this
that
these
those
each
every
either
neither
some
any
no
such
both
all
another
other
certain
said
and
or
but
nor
so
yet
for
because
although
though
while
whereas
if
unless
until
till
when
whenever
where
wherever
whether
however
provided
notwithstanding
as
than
that
since
before
after
of
in
on
at
by
to
from
with
without
within
into
onto
upon
under
over
above
below
between
among
amongst
through
throughout
during
against
toward
towards
about
across
along
around
behind
beside
besides
beyond
concerning
despite
down
except
excepting
inside
outside
near
off
out
past
per
regarding
respecting
up
via
vis-a-vis
pursuant
thereto
thereof
therein
thereunder
hereof
herein
hereunder
hereto
not
is
are
was
were
be
been
being
am
shall
may
must
will
would
should
can
could
might
do
does
did
have
has
had
it
its
he
she
they
them
their
his
her
who
whom
whose
which
what
i
we
you
your
our
us
me
him
)";

// Irregular and statute-frequent forms the suffix rules do not cover,
// "form lemma" per line.
inline constexpr std::string_view kLemmaExceptions = R"(incurred incur
incurring incur
occurred occur
occurring occur
referred refer
referring refer
transferred transfer
transferring transfer
preferred prefer
conferred confer
deterred deter
barred bar
children child
men man
women woman
persons person
was be
were be
been be
being be
is be
are be
am be
has have
had have
having have
does do
did do
done do
doing do
made make
making make
makes make
gave give
given give
giving give
gives give
took take
taken take
taking take
takes take
held hold
holding hold
holds hold
brought bring
bringing bring
brings bring
bought buy
buying buy
buys buy
sold sell
selling sell
sells sell
paid pay
paying pay
pays pay
said say
saying say
says say
found find
finding find
finds find
lost lose
losing lose
loses lose
left leave
leaving leave
leaves leave
met meet
meeting meet
meets meet
kept keep
keeping keep
keeps keep
set set
sets set
setting set
put put
puts put
putting put
let let
lets let
letting let
arose arise
arisen arise
arising arise
arises arise
became become
becomes become
becoming become
began begin
begun begin
beginning begin
begins begin
knew know
known know
knowing know
knows know
grew grow
grown grow
growing grow
grows grow
drew draw
drawn draw
drawing draw
draws draw
withdrew withdraw
withdrawn withdraw
withdrawing withdraw
withdraws withdraw
chose choose
chosen choose
choosing choose
chooses choose
rose rise
risen rise
rising rise
rises rise
fell fall
fallen fall
falling fall
falls fall
came come
coming come
comes come
went go
gone go
going go
goes go
ran run
running run
runs run
saw see
seen see
seeing see
sees see
sought seek
seeking seek
seeks seek
thought think
thinking think
thinks think
understood understand
understanding understand
understands understand
wrote write
written write
writing write
writes write
died die
dying die
dies die
lay lie
lain lie
lying lie
lies lie
laid lay
lays lay
laying lay
bore bear
borne bear
bearing bear
bears bear
bound bind
binding bind
binds bind
lent lend
lending lend
lends lend
sent send
sending send
sends send
spent spend
spending spend
spends spend
built build
building build
builds build
dealt deal
dealing deal
deals deal
meant mean
meaning mean
means mean
owed owe
owes owe
owing owe
used use
uses use
using use
caused cause
causes cause
causing cause
ceased cease
ceases cease
ceasing cease
stated state
states state
stating state
provided provide
provides provide
providing provide
required require
requires require
requiring require
acquired acquire
acquires acquire
acquiring acquire
obliged oblige
obliges oblige
obliging oblige
obligated obligate
obligates obligate
obligating obligate
deemed deem
deems deem
deeming deem
agreed agree
agrees agree
agreeing agree
guaranteed guarantee
guarantees guarantee
guaranteeing guarantee
decreed decree
conveyed convey
conveys convey
conveying convey
enjoyed enjoy
enjoys enjoy
enjoying enjoy
applied apply
applies apply
applying apply
supplied supply
supplies supply
supplying supply
specified specify
specifies specify
specifying specify
notified notify
notifies notify
notifying notify
ratified ratify
ratifies ratify
ratifying ratify
modified modify
modifies modify
modifying modify
accompanied accompany
accompanies accompany
accompanying accompany
carried carry
carries carry
carrying carry
varied vary
varies vary
varying vary
bases base
basis basis
analyses analysis
premises premise
mortgages mortgage
mortgaged mortgage
mortgaging mortgage
damages damage
damaged damage
damaging damage
expenses expense
purposes purpose
clauses clause
cases case
houses house
uses use
businesses business
this this
his his
its its
nothing nothing
anything anything
something something
everything everything
proceedings proceed
proceeding proceed
proceeds proceed
)";

}  // namespace lqa::data

#endif

#include "stl_sentry/marks.hpp"

using namespace stl_sentry;

class Foo : public Deprecated<Foo>
{
public:
  Foo( int a, int b )
  {
    (void)a;
    (void)b;
  }
};

int main()
{
  Foo f( 1, 2 );
  (void)f;
  return 0;
}

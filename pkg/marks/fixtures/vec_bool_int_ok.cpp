#include "stl_sentry/marks.hpp"

using namespace stl_sentry;

int main()
{
  vector<int> v;
  v.push_back( 3 );
  return 0;
}

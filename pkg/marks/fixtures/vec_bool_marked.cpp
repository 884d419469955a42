#include "stl_sentry/marks.hpp"

using namespace stl_sentry;

int main()
{
  vector<bool, I_KNOW_VECTOR_BOOL> ok1;
  vector<bool, std::allocator<bool>, I_KNOW_VECTOR_BOOL> ok2;
  ok1.push_back( true );
  ok2.push_back( false );
  return 0;
}

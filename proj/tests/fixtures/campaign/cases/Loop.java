int total = 0;
for (int i = 0; i < 5; i++) {
  total += i;
}
if (total > 8) {
  System.out.println("big");
}
while (total > 0) {
  total -= 4;
}
